use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

use lensball::arith::{
    self, det, frac_of_euc, frac_of_hj, hj_of_frac, hj_reversal_partner, mediant, Frac,
};
use lensball::cobord::{self, addc, addc_plumbing, euler_number, CandidateInput, Construction};
use lensball::farey::{self, Step, TreePath};
use lensball::framing::{
    euclid_identity_check, framing_halves, framing_sequence, framing_sequence_closed_form,
};
use lensball::lens::{
    berge_example_identities, boundary_of_ball, normalize_ball_params, recognize_ball_boundary,
    BallParams, LensSpace, Sign,
};
use lensball::slidetree::{self, Family};

fn coprime_pair(max_p: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_p)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |(p, q)| p.gcd(q) == 1)
}

fn lens(max_p: i64) -> impl Strategy<Value = LensSpace> {
    coprime_pair(max_p).prop_map(|(p, q)| LensSpace::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn hj_round_trip((p, q) in coprime_pair(500)) {
        let f = Frac::new(p, q).unwrap();
        let cf = hj_of_frac(&f).unwrap();
        prop_assert!(cf.is_canonical());
        prop_assert_eq!(frac_of_hj(cf.coeffs()).reduce(), f.clone());
        let run = arith::euc_of_frac(&f).unwrap();
        prop_assert_eq!(frac_of_euc(&run.cf).reduce(), f);
    }

    #[test]
    fn reversal_law((p, q) in coprime_pair(500)) {
        let f = Frac::new(p, q).unwrap();
        let partner = hj_reversal_partner(&f).unwrap();
        prop_assert_eq!(hj_of_frac(&f).unwrap().reversed(), hj_of_frac(&partner).unwrap());
    }

    #[test]
    fn continuants_are_total(v in prop::collection::vec(-6i64..7, 0..12)) {
        let coeffs: Vec<BigInt> = v.iter().map(|&a| BigInt::from(a)).collect();
        let f = frac_of_hj(&coeffs);
        // the continuant pair (p_k, q_k) satisfies p_k q_{k-1} - p_{k-1} q_k = -1
        if let Some((_, init)) = coeffs.split_last() {
            let g = frac_of_hj(init);
            prop_assert_eq!(det(&f, &g), BigInt::from(-1));
        } else {
            prop_assert_eq!(f, Frac::new(1, 0).unwrap());
        }
    }

    #[test]
    fn mediant_determinants(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
        prop_assume!(!(a == 0 && b == 0) && !(c == 0 && d == 0) && !(a + c == 0 && b + d == 0));
        let (f1, f2) = (Frac::new(a, b).unwrap(), Frac::new(c, d).unwrap());
        let m = mediant(&f1, &f2);
        prop_assert_eq!(det(&f1, &m), det(&f1, &f2));
        prop_assert_eq!(det(&m, &f2), det(&f1, &f2));
    }

    #[test]
    fn equivalences_are_equivalence_relations(a in lens(60), k1 in 1i64..60, k2 in 1i64..60) {
        // build related spaces of the same order so transitivity is exercised
        let p = a.p().clone();
        let b = LensSpace::new(p.clone(), (a.q() * k1).mod_floor(&p)).ok();
        let c = LensSpace::new(p.clone(), (a.q() * k2).mod_floor(&p)).ok();
        prop_assert!(a.equiv_oriented(&a) && a.equiv_unoriented(&a));
        for x in [b.as_ref(), c.as_ref()].into_iter().flatten() {
            prop_assert_eq!(a.equiv_oriented(x), x.equiv_oriented(&a));
            prop_assert_eq!(a.equiv_unoriented(x), x.equiv_unoriented(&a));
            prop_assert_eq!(
                a.equiv_unoriented(x),
                a.equiv_oriented(x) || a.equiv_oriented(&x.reverse_orientation())
            );
        }
        if let (Some(b), Some(c)) = (b, c) {
            if a.equiv_oriented(&b) && b.equiv_oriented(&c) {
                prop_assert!(a.equiv_oriented(&c));
            }
            if a.equiv_unoriented(&b) && b.equiv_unoriented(&c) {
                prop_assert!(a.equiv_unoriented(&c));
            }
        }
        prop_assert_eq!(a.reverse_orientation().reverse_orientation(), a.clone());
        prop_assert_eq!(a.canonical_unoriented().canonical_unoriented(), a.canonical_unoriented());
    }

    #[test]
    fn framing_contract((p, q) in coprime_pair(300)) {
        prop_assume!(p > q);
        let s = framing_sequence(p, q).unwrap();
        let (left, right) = framing_halves(&s);
        prop_assert_eq!(left.value().reduce(), Frac::new(p, q).unwrap());
        prop_assert_eq!(right.reversed().value().reduce(), Frac::new(p, p - q).unwrap());
        prop_assert_eq!(framing_sequence_closed_form(p, q).unwrap(), s);
        prop_assert!(euclid_identity_check(p, q).unwrap());
    }

    #[test]
    fn plumbing_matches_continuants(i in 0usize..200, j in 0usize..200, c in -8i64..=12) {
        let sources = cobord::search_sources(16);
        let (pq, rs) = (&sources[i], &sources[j]);
        let Ok(cand) = addc(pq, rs, c) else { return Ok(()) };
        let CandidateInput::Addc { tu, .. } = &cand.input else { unreachable!() };
        let (t, u) = addc_plumbing(pq, rs, &BigInt::from(c)).unwrap();
        let (t, u) = if t.is_negative() { (-t, -u) } else { (t, u) };
        prop_assert_eq!((tu.p().clone(), tu.q().clone()), (t, u));
        let e = euler_number(pq, rs, c).unwrap();
        prop_assert_eq!(cand.sign == Sign::Plus, e.is_positive());
        // Euler number depends only on q/p modulo 1 shifts
        let shifted = Frac::new(pq.p().clone(), pq.q() + pq.p() * 3).unwrap();
        prop_assert_eq!(euler_number(&shifted, rs, c + 3).unwrap(), e);
        prop_assert!(cand.revalidate());
    }
}

#[test]
fn boundary_invariance_under_shifts() {
    for p in 1..=100i64 {
        for q in 0..=p / 2 {
            let Ok(b) = normalize_ball_params(p, q) else {
                continue;
            };
            let base = boundary_of_ball(&b);
            for k in -3..=3i64 {
                for q2 in [k * p + q, k * p - q] {
                    let other = BallParams::new(p, q2, Sign::Plus).unwrap();
                    assert!(
                        boundary_of_ball(&other).equiv_oriented(&base),
                        "B_{{{p},{q2}}}"
                    );
                }
            }
        }
    }
}

#[test]
fn recognition_contains_normal_form() {
    for p in 1..=60i64 {
        for q in -(2 * p)..=(2 * p) {
            let Ok(b) = BallParams::new(p, q, Sign::Plus) else {
                continue;
            };
            for s in [Sign::Plus, Sign::Minus] {
                let b = b.with_sign(s);
                let found = recognize_ball_boundary(&b.boundary());
                assert!(found.contains(&b.normalized()) || p == 1, "{b}");
            }
        }
    }
}

#[test]
fn berge_identities_hold() {
    for r in 2..=50 {
        assert!(berge_example_identities(r), "r = {r}");
    }
}

#[test]
fn locate_inverts_children() {
    for n in farey::enumerate_depth(&farey::two_farey_root(), 8) {
        for s in [Step::L, Step::R] {
            let ch = farey::child(&n, s);
            assert_eq!(farey::locate(ch.middle()).unwrap(), n.path.child(s));
        }
    }
}

#[test]
fn doubled_classical_subtree_is_two_farey() {
    let classical = farey::TripleNode {
        fracs: [
            Frac::new(1, 0).unwrap(),
            Frac::new(3, 1).unwrap(),
            Frac::new(2, 1).unwrap(),
        ],
        path: TreePath::root(),
    };
    let a = farey::enumerate_depth(&classical, 6);
    let b = farey::enumerate_depth(&farey::two_farey_root(), 6);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.path, y.path);
        let doubled = x
            .fracs
            .clone()
            .map(|f| Frac::new(f.p().clone(), f.q() * 2).unwrap());
        assert_eq!(doubled, y.fracs);
    }
}

#[test]
fn every_middle_appears_once() {
    let nodes = farey::enumerate_two_farey(40);
    let mut seen = HashSet::new();
    for n in &nodes {
        assert!(seen.insert(n.middle().clone()), "{} twice", n.middle());
    }
    for p in 1..=40i64 {
        for q in 0..=p {
            let f = Frac::new(p, q).unwrap();
            if farey::is_two_farey_middle(&f) {
                assert!(seen.contains(&f), "{f} missing");
            }
        }
    }
}

#[test]
fn add4_parity() {
    let outcome = cobord::search(&cobord::SearchConfig {
        addc: false,
        ..Default::default()
    });
    assert!(!outcome.candidates.is_empty());
    for c in &outcome.candidates {
        assert_eq!(c.construction, Construction::Add4);
        let CandidateInput::Add4 { a, tu, .. } = &c.input else {
            unreachable!()
        };
        let p = a.value().reduce().p().clone();
        assert!(p.is_odd() && tu.p().is_odd(), "{c:?}");
        assert!(p.gcd(tu.p()).is_one());
        assert!(c.revalidate());
    }
}

#[test]
fn slide_identities_to_depth_twelve() {
    for fam in Family::ALL {
        let nodes = slidetree::enumerate_depth(fam, 12);
        assert_eq!(nodes.len(), (1 << 13) - 1);
        for n in &nodes {
            assert!(fam.check(&n.entries), "{fam} {}", n.path);
            assert_eq!(n.x, n.entries.x());
        }
        // the left move keeps x1 and sends (x2, x3) to (x3, -x2 - x1 x3) up to the family signs
        for n in nodes.iter().filter(|n| n.path.depth() < 12) {
            let l = n.child(Step::L);
            assert_eq!(l.x[0], n.x[0]);
            assert!(
                l.x[1].abs() == n.x[2].abs() || fam == Family::TwoFarey,
                "{fam} {}",
                n.path
            );
        }
    }
}

#[test]
fn zero_is_not_a_continued_fraction() {
    assert!(Frac::new(0, 0).is_err());
    assert!(hj_of_frac(&Frac::new(0, 1).unwrap()).is_err());
}
