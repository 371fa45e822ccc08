//! Signed slide triple trees.
//!
//! A node is three signed entries `γ_i = (p_i, q_i)` with orientations `δ_i`.
//! With `(p,q)·(r,s) = ps - qr`, the x-vector is
//! `x = (γ2·γ3, γ1·γ3, γ1·γ2)`. Mutation:
//!
//! ```text
//! left:  (γ1, γ2, γ3) -> (γ1, -γ3 + κ δ2 x1 γ2, γ2)   new entry keeps δ3
//! right: (γ1, γ2, γ3) -> (γ2, -γ1 + κ δ2 x3 γ2, γ3)   new entry keeps δ1
//! ```
//!
//! with `κ = +1` for the Markov and both Lisca–Parma families and `κ = -1` for
//! the 2-Farey family. These constants are the ones under which every family
//! identity survives mutation; the tests pin them to depth 12.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Frac;
use crate::farey::{self, Step, TreePath};
use crate::json::IntRepr;
use crate::lens::{BallParams, LensError, LensSpace, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlideError {
    #[error("{0} fails the {1} family identities")]
    InvalidTriple(Box<SignedTriple>, Family),
    #[error("unknown family {0:?} (expected markov, lp2, lp3 or two-farey)")]
    UnknownFamily(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Markov,
    Lp2,
    Lp3,
    TwoFarey,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Markov, Family::Lp2, Family::Lp3, Family::TwoFarey];

    pub fn name(self) -> &'static str {
        match self {
            Family::Markov => "MARKOV",
            Family::Lp2 => "LP2",
            Family::Lp3 => "LP3",
            Family::TwoFarey => "TWO_FAREY",
        }
    }

    pub fn parse(s: &str) -> Result<Family, SlideError> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "markov" => Ok(Family::Markov),
            "lp2" => Ok(Family::Lp2),
            "lp3" => Ok(Family::Lp3),
            "twofarey" | "2farey" => Ok(Family::TwoFarey),
            _ => Err(SlideError::UnknownFamily(s.to_string())),
        }
    }

    pub fn kappa(self) -> i64 {
        match self {
            Family::TwoFarey => -1,
            _ => 1,
        }
    }

    pub fn root(self) -> SignedTriple {
        use Sign::{Minus as M, Plus as P};
        let t = |a: (i64, i64, Sign), b: (i64, i64, Sign), c: (i64, i64, Sign)| {
            SignedTriple::new([
                Entry::new(a.0, a.1, a.2),
                Entry::new(b.0, b.1, b.2),
                Entry::new(c.0, c.1, c.2),
            ])
        };
        match self {
            Family::Markov => t((1, -1, P), (5, 1, P), (2, 1, P)),
            Family::Lp2 => t((1, 1, M), (-3, -1, M), (2, 1, P)),
            Family::Lp3 => t((1, -1, P), (-3, -1, M), (2, 1, P)),
            Family::TwoFarey => t((1, 0, M), (3, 2, M), (2, 2, M)),
        }
    }

    /// The two nodes above the root (farthest first); each one's left child is the next.
    pub fn pre_root_chain(self) -> [SignedTriple; 2] {
        let up1 = inverse_left(&self.root(), self);
        let up2 = inverse_left(&up1, self);
        [up2, up1]
    }

    pub fn check(self, t: &SignedTriple) -> bool {
        match self {
            Family::Markov => check_markov(t),
            Family::Lp2 => check_lp2(t),
            Family::Lp3 => check_lp3(t),
            Family::TwoFarey => check_two_farey(t),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One signed entry `(p, q, δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub p: BigInt,
    pub q: BigInt,
    pub delta: Sign,
}

impl Entry {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, delta: Sign) -> Self {
        Entry {
            p: p.into(),
            q: q.into(),
            delta,
        }
    }

    fn dot(&self, o: &Entry) -> BigInt {
        &self.p * &o.q - &self.q * &o.p
    }
}

impl Serialize for Entry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (IntRepr::from(&self.p), IntRepr::from(&self.q), self.delta).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (p, q, delta) = <(IntRepr, IntRepr, Sign)>::deserialize(d)?;
        Ok(Entry {
            p: p.into_bigint().map_err(D::Error::custom)?,
            q: q.into_bigint().map_err(D::Error::custom)?,
            delta,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedTriple {
    pub entries: [Entry; 3],
}

impl SignedTriple {
    pub fn new(entries: [Entry; 3]) -> Self {
        SignedTriple { entries }
    }

    pub fn x(&self) -> [BigInt; 3] {
        let [a, b, c] = &self.entries;
        [b.dot(c), a.dot(c), a.dot(b)]
    }

    pub fn p(&self) -> [&BigInt; 3] {
        let [a, b, c] = &self.entries;
        [&a.p, &b.p, &c.p]
    }

    pub fn max_abs_p(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.p.abs())
            .max()
            .expect("three entries")
    }

    /// `|p|` sorted ascending.
    pub fn abs_p_sorted(&self) -> [BigInt; 3] {
        let mut v = [
            self.entries[0].p.abs(),
            self.entries[1].p.abs(),
            self.entries[2].p.abs(),
        ];
        v.sort();
        v
    }

    pub fn deltas(&self) -> [i64; 3] {
        [
            self.entries[0].delta.as_i64(),
            self.entries[1].delta.as_i64(),
            self.entries[2].delta.as_i64(),
        ]
    }
}

impl fmt::Display for SignedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{},{})", e.p, e.q, e.delta)?;
        }
        f.write_str(")")
    }
}

fn combine(minus: &Entry, coeff: &BigInt, mid: &Entry, delta: Sign) -> Entry {
    Entry {
        p: -&minus.p + coeff * &mid.p,
        q: -&minus.q + coeff * &mid.q,
        delta,
    }
}

fn left_unchecked(t: &SignedTriple, fam: Family) -> SignedTriple {
    let [g1, g2, g3] = &t.entries;
    let [x1, _, _] = t.x();
    let coeff = x1 * fam.kappa() * g2.delta.as_i64();
    SignedTriple::new([g1.clone(), combine(g3, &coeff, g2, g3.delta), g2.clone()])
}

fn right_unchecked(t: &SignedTriple, fam: Family) -> SignedTriple {
    let [g1, g2, g3] = &t.entries;
    let [_, _, x3] = t.x();
    let coeff = x3 * fam.kappa() * g2.delta.as_i64();
    SignedTriple::new([g2.clone(), combine(g1, &coeff, g2, g1.delta), g3.clone()])
}

/// The parent whose left child is `t`. The left move leaves `x1` unchanged,
/// so the replaced entry is recovered from `t` alone.
pub fn inverse_left(t: &SignedTriple, fam: Family) -> SignedTriple {
    let [g1, n, g2] = &t.entries;
    let [x1, _, _] = t.x();
    let coeff = x1 * fam.kappa() * g2.delta.as_i64();
    SignedTriple::new([g1.clone(), g2.clone(), combine(n, &coeff, g2, n.delta)])
}

pub fn mutate_left(t: &SignedTriple, fam: Family) -> Result<SignedTriple, SlideError> {
    if !fam.check(t) {
        return Err(SlideError::InvalidTriple(Box::new(t.clone()), fam));
    }
    Ok(left_unchecked(t, fam))
}

pub fn mutate_right(t: &SignedTriple, fam: Family) -> Result<SignedTriple, SlideError> {
    if !fam.check(t) {
        return Err(SlideError::InvalidTriple(Box::new(t.clone()), fam));
    }
    Ok(right_unchecked(t, fam))
}

/// `p1² + p2² + p3² = 3 p1 p2 p3`, `x1 = 3 p1`, `x3 = 3 p3`.
pub fn check_markov(t: &SignedTriple) -> bool {
    let [p1, p2, p3] = t.p();
    let [x1, _, x3] = t.x();
    p1 * p1 + p2 * p2 + p3 * p3 == BigInt::from(3) * p1 * p2 * p3
        && x1 == BigInt::from(3) * p1
        && x3 == BigInt::from(3) * p3
}

/// `Σ δ_i p_i² = p1 p2 p3`, `x1 = δ1 p1`, `x3 = δ3 p3`, δ-multiset `{+,-,-}`,
/// and the weight congruences `q_i p_k ≡ δ_j p_j`, `q_i p_j ≡ -δ_k p_k (mod p_i)`
/// for cyclic `(i, j, k)`.
pub fn check_lp2(t: &SignedTriple) -> bool {
    let e = &t.entries;
    let d = t.deltas();
    let mut sorted = d;
    sorted.sort();
    if sorted != [-1, -1, 1] {
        return false;
    }
    let [x1, _, x3] = t.x();
    let eq: BigInt = e.iter().map(|x| &x.p * &x.p * x.delta.as_i64()).sum();
    if eq != &e[0].p * &e[1].p * &e[2].p || x1 != &e[0].p * d[0] || x3 != &e[2].p * d[2] {
        return false;
    }
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let m = e[i].p.abs();
        if m <= BigInt::one() {
            continue;
        }
        let first = (&e[i].q * &e[k].p - &e[j].p * d[j]).mod_floor(&m);
        let second = (&e[i].q * &e[j].p + &e[k].p * d[k]).mod_floor(&m);
        if !first.is_zero() || !second.is_zero() {
            return false;
        }
    }
    true
}

/// `Σ δ_i x_i² = x1 x2 x3 - 4` and
/// `Σ δ_i p_i² - δ1δ2 p1p2 x3 - δ1δ3 p1p3 x2 - δ2δ3 p2p3 x1 - p1p3 x1x3 = 0`.
pub fn check_lp3(t: &SignedTriple) -> bool {
    let [p1, p2, p3] = t.p();
    let [x1, x2, x3] = t.x();
    let [d1, d2, d3] = t.deltas();
    let first = &x1 * &x1 * d1 + &x2 * &x2 * d2 + &x3 * &x3 * d3 == &x1 * &x2 * &x3 - 4;
    let second = p1 * p1 * d1 + p2 * p2 * d2 + p3 * p3 * d3
        - p1 * p2 * &x3 * (d1 * d2)
        - p1 * p3 * &x2 * (d1 * d3)
        - p2 * p3 * &x1 * (d2 * d3)
        - p1 * p3 * &x1 * &x3;
    first && second.is_zero()
}

/// `x1 = x3 = 2` and all `δ = -1`.
pub fn check_two_farey(t: &SignedTriple) -> bool {
    let two = BigInt::from(2);
    let [x1, _, x3] = t.x();
    x1 == two && x3 == two && t.entries.iter().all(|e| e.delta == Sign::Minus)
}

/// [`check_two_farey`] plus agreement, up to sign, with the 2-Farey node at `path`.
pub fn check_two_farey_correspondence(t: &SignedTriple, path: &TreePath) -> bool {
    if !check_two_farey(t) {
        return false;
    }
    let node = farey::node_at(&farey::two_farey_root(), path);
    t.entries
        .iter()
        .zip(node.fracs.iter())
        .all(|(e, f)| entry_matches_frac(e, f))
}

fn entry_matches_frac(e: &Entry, f: &Frac) -> bool {
    (&e.p == f.p() && &e.q == f.q()) || (-&e.p == *f.p() && -&e.q == *f.q())
}

/// A tree node with its family and path from the family root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlideNode {
    pub family: Family,
    pub path: TreePath,
    pub entries: SignedTriple,
    #[serde(with = "x_repr")]
    pub x: [BigInt; 3],
}

mod x_repr {
    use super::*;

    pub fn serialize<S: serde::Serializer>(x: &[BigInt; 3], s: S) -> Result<S::Ok, S::Error> {
        [
            IntRepr::from(&x[0]),
            IntRepr::from(&x[1]),
            IntRepr::from(&x[2]),
        ]
        .serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<[BigInt; 3], D::Error> {
        use serde::de::Error;
        let [a, b, c] = <[IntRepr; 3]>::deserialize(d)?;
        Ok([
            a.into_bigint().map_err(D::Error::custom)?,
            b.into_bigint().map_err(D::Error::custom)?,
            c.into_bigint().map_err(D::Error::custom)?,
        ])
    }
}

impl SlideNode {
    pub fn new(family: Family, path: TreePath, entries: SignedTriple) -> Self {
        let x = entries.x();
        SlideNode {
            family,
            path,
            entries,
            x,
        }
    }

    pub fn root(family: Family) -> Self {
        SlideNode::new(family, TreePath::root(), family.root())
    }

    pub fn child(&self, s: Step) -> SlideNode {
        let t = match s {
            Step::L => left_unchecked(&self.entries, self.family),
            Step::R => right_unchecked(&self.entries, self.family),
        };
        SlideNode::new(self.family, self.path.child(s), t)
    }
}

/// The node at `path` below the family root.
pub fn node_at(fam: Family, path: &TreePath) -> SlideNode {
    path.0.iter().fold(SlideNode::root(fam), |n, &s| n.child(s))
}

/// All nodes with `max |p| <= bound`, depth first, L before R. `max |p|`
/// never decreases from parent to child, so pruning is exact.
pub fn enumerate(fam: Family, bound: u64) -> Vec<SlideNode> {
    let b = BigInt::from(bound);
    let mut out = Vec::new();
    let mut stack = vec![SlideNode::root(fam)];
    while let Some(n) = stack.pop() {
        if n.entries.max_abs_p() > b {
            continue;
        }
        stack.push(n.child(Step::R));
        stack.push(n.child(Step::L));
        out.push(n);
    }
    out
}

/// The in-bound pre-root nodes (empty paths) followed by [`enumerate`].
pub fn enumerate_with_pre_root(fam: Family, bound: u64) -> Vec<SlideNode> {
    let b = BigInt::from(bound);
    let mut out: Vec<SlideNode> = fam
        .pre_root_chain()
        .into_iter()
        .filter(|t| t.max_abs_p() <= b)
        .map(|t| SlideNode::new(fam, TreePath::root(), t))
        .collect();
    out.extend(enumerate(fam, bound));
    out
}

/// All nodes of depth `<= depth`, depth first.
pub fn enumerate_depth(fam: Family, depth: usize) -> Vec<SlideNode> {
    let mut out = Vec::new();
    let mut stack = vec![SlideNode::root(fam)];
    while let Some(n) = stack.pop() {
        if n.path.depth() < depth {
            stack.push(n.child(Step::R));
            stack.push(n.child(Step::L));
        }
        out.push(n);
    }
    out
}

/// Each entry as a normalised signed ball `δ_i B_{|p_i|, ±q_i}` with its signed boundary.
pub fn triple_to_balls(t: &SignedTriple) -> Result<[(BallParams, LensSpace); 3], LensError> {
    let one = |e: &Entry| -> Result<(BallParams, LensSpace), LensError> {
        // B_{-p,-q} = B_{p,q}
        let (p, q) = if e.p.is_negative() {
            (-&e.p, -&e.q)
        } else {
            (e.p.clone(), e.q.clone())
        };
        let ball = BallParams::new(p, q, e.delta)?.normalized();
        let l = ball.boundary();
        Ok((ball, l))
    };
    let [a, b, c] = &t.entries;
    Ok([one(a)?, one(b)?, one(c)?])
}

/// Integer roots of `z² + b z + c = 0`.
fn monic_roots(b: i128, c: i128) -> Vec<i128> {
    let disc = b * b - 4 * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    if s * s != disc {
        return Vec::new();
    }
    let mut out = Vec::new();
    for num in [-b + s, -b - s] {
        if num % 2 == 0 {
            out.push(num / 2);
        }
    }
    out.dedup();
    out
}

fn sorted3(a: u64, b: u64, c: u64) -> [u64; 3] {
    let mut v = [a, b, c];
    v.sort();
    v
}

/// Positive Markov triples with all entries `<= n`, sorted ascending.
pub fn brute_force_markov(n: u64) -> BTreeSet<[u64; 3]> {
    let mut out = BTreeSet::new();
    for a in 1..=n {
        for b in a..=n {
            let (ai, bi) = (i128::from(a), i128::from(b));
            for c in monic_roots(-3 * ai * bi, ai * ai + bi * bi) {
                if c >= bi && c <= i128::from(n) {
                    out.insert(sorted3(a, b, c as u64));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignedEquation {
    /// `Σ δ_i p_i² = p1 p2 p3` with δ-multiset `{+,-,-}`; p-triples, pairwise coprime.
    Lp2,
    /// `Σ δ_i x_i² = x1 x2 x3 - 4` with δ-multiset `{+,+,-}`; x-triples.
    Lp3,
}

/// Solutions with all `|entries| <= n`, as sorted absolute values. Sign
/// changes and permutations are quotiented out.
pub fn brute_force_signed(n: u64, eq: SignedEquation) -> BTreeSet<[u64; 3]> {
    let mut out = BTreeSet::new();
    let ni = i128::from(n);
    for a in 1..=n {
        for b in a..=n {
            let (ai, bi) = (i128::from(a), i128::from(b));
            let ab = ai * bi;
            // one quadratic in c per position of the odd sign out and per sign of the product
            let ks: [i128; 3] = match eq {
                SignedEquation::Lp2 => [-(ai * ai + bi * bi), bi * bi - ai * ai, ai * ai - bi * bi],
                SignedEquation::Lp3 => [
                    -(ai * ai + bi * bi + 4),
                    bi * bi - ai * ai + 4,
                    ai * ai - bi * bi + 4,
                ],
            };
            for k in ks {
                for s in [1, -1] {
                    for c in monic_roots(s * ab, k) {
                        if c < bi || c > ni {
                            continue;
                        }
                        let c = c as u64;
                        if eq == SignedEquation::Lp2
                            && !(a.gcd(&b) == 1 && a.gcd(&c) == 1 && b.gcd(&c) == 1)
                        {
                            continue;
                        }
                        out.insert(sorted3(a, b, c));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus as M, Plus as P};

    fn t(v: [(i64, i64, Sign); 3]) -> SignedTriple {
        SignedTriple::new(v.map(|(p, q, d)| Entry::new(p, q, d)))
    }

    fn xs(t: &SignedTriple) -> [i64; 3] {
        t.x().map(|v| i64::try_from(v).unwrap())
    }

    #[test]
    fn root_x_vectors() {
        assert_eq!(xs(&Family::Markov.root()), [3, 3, 6]);
        assert_eq!(xs(&Family::TwoFarey.root()), [2, 2, 2]);
        assert_eq!(xs(&Family::Lp2.root()), [-1, -1, 2]);
        assert_eq!(xs(&Family::Lp3.root()), [-1, 3, -4]);
        for f in Family::ALL {
            assert!(f.check(&f.root()), "{f}");
        }
    }

    #[test]
    fn pre_root_chains() {
        let [a, b] = Family::Lp3.pre_root_chain();
        assert_eq!(a, t([(1, -1, P), (1, 0, M), (-1, -1, P)]));
        assert_eq!(xs(&a), [-1, -2, 1]);
        assert_eq!(b, t([(1, -1, P), (2, 1, P), (1, 0, M)]));
        // the mutation law (x1, x3, -x2 - x1 x3) from (-1,-2,1); the printed (-1,-1,-3)
        // flips x2 and x3 together, which leaves the quadratic identity unchanged
        assert_eq!(xs(&b), [-1, 1, 3]);
        assert_eq!(mutate_left(&a, Family::Lp3).unwrap(), b);
        assert_eq!(mutate_left(&b, Family::Lp3).unwrap(), Family::Lp3.root());

        let [a, b] = Family::Markov.pre_root_chain();
        assert_eq!(a, t([(1, -1, P), (1, 2, P), (1, 5, P)]));
        assert_eq!(b, t([(1, -1, P), (2, 1, P), (1, 2, P)]));

        let [a, b] = Family::Lp2.pre_root_chain();
        assert_eq!(a, t([(1, 1, M), (1, 0, M), (-1, -1, P)]));
        assert_eq!(b, t([(1, 1, M), (2, 1, P), (1, 0, M)]));

        let chain = farey::enlarged_base_chain();
        let [a, b] = Family::TwoFarey.pre_root_chain();
        assert!(a
            .entries
            .iter()
            .zip(chain[0].fracs.iter())
            .all(|(e, f)| entry_matches_frac(e, f)));
        assert!(b
            .entries
            .iter()
            .zip(chain[1].fracs.iter())
            .all(|(e, f)| entry_matches_frac(e, f)));

        for f in Family::ALL {
            for n in f.pre_root_chain() {
                assert!(f.check(&n), "{f} {n}");
            }
        }
    }

    #[test]
    fn worked_mutations() {
        let m = mutate_left(&Family::Markov.root(), Family::Markov).unwrap();
        assert_eq!(m.entries[1], Entry::new(13, 2, P));
        assert_eq!(xs(&m), [3, 6, 15]);
        let f = mutate_left(&Family::TwoFarey.root(), Family::TwoFarey).unwrap();
        assert_eq!(
            (&f.entries[1].p, &f.entries[1].q),
            (&BigInt::from(4), &BigInt::from(2))
        );
        let bad = t([(1, -1, P), (5, 1, P), (3, 1, P)]);
        assert!(mutate_left(&bad, Family::Markov).is_err());
    }

    #[test]
    fn checkers() {
        let pre = Family::Lp3.pre_root_chain();
        assert!(check_lp3(&pre[0]) && check_lp3(&pre[1]));
        // equal p's, wrong x: ((1,-1),(1,0),(-1,-1)) with the last q shifted gives x = (-1,-1,-2)-like data
        let off = t([(1, -1, P), (2, 1, P), (1, 1, M)]);
        assert!(!check_lp3(&off));
        assert!(!check_markov(&t([(1, 0, P), (5, 0, P), (3, 0, P)])));
        let lp2_bad_signs = SignedTriple::new({
            let mut e = Family::Lp2.root().entries;
            e[0].delta = P;
            e
        });
        assert!(!check_lp2(&lp2_bad_signs));
        assert!(!check_two_farey(&Family::Markov.root()));
    }

    #[test]
    fn depth_twelve_invariants() {
        for f in Family::ALL {
            for n in enumerate_depth(f, 12) {
                assert!(f.check(&n.entries), "{f} {} {}", n.path, n.entries);
            }
        }
    }

    #[test]
    fn small_brute_forces() {
        let m30: Vec<_> = brute_force_markov(30).into_iter().collect();
        assert_eq!(
            m30,
            vec![[1, 1, 1], [1, 1, 2], [1, 2, 5], [1, 5, 13], [2, 5, 29]]
        );
        assert_eq!(brute_force_markov(2).len(), 2);
        assert!(brute_force_markov(0).is_empty());
        assert!(brute_force_signed(3, SignedEquation::Lp3).contains(&[1, 1, 2]));
        assert!(brute_force_signed(0, SignedEquation::Lp2).is_empty());
    }

    #[test]
    fn balls_of_triples() {
        let r = farey::right_child(&farey::two_farey_root());
        let path: TreePath = "R".parse().unwrap();
        let n = node_at(Family::TwoFarey, &path);
        assert!(check_two_farey_correspondence(&n.entries, &path));
        let balls = triple_to_balls(&n.entries).unwrap();
        let got: Vec<_> = balls
            .iter()
            .map(|(b, _)| (b.p().clone(), b.q().clone()))
            .collect();
        let want: Vec<_> = r
            .fracs
            .iter()
            .map(|f| (f.p().clone(), f.q().clone()))
            .collect();
        // (3,2),(5,4),(2,2) normalise to (3,1),(5,1),(2,0)
        assert_eq!(want[0], (BigInt::from(3), BigInt::from(2)));
        assert_eq!(got[0], (BigInt::from(3), BigInt::from(1)));
        let ls: Vec<_> = balls.iter().map(|(_, l)| l.clone()).collect();
        assert!(ls[0].equiv_unoriented(&LensSpace::new(9, 4).unwrap()));
        assert!(ls[1].equiv_unoriented(&LensSpace::new(25, 6).unwrap()));
        assert!(ls[2].equiv_unoriented(&LensSpace::new(4, 1).unwrap()));

        let m = triple_to_balls(&Family::Markov.root()).unwrap();
        assert_eq!(m[0].1, LensSpace::sphere());
        assert_eq!(m[1].1, LensSpace::new(25, 4).unwrap());
        assert_eq!(m[2].1, LensSpace::new(4, 1).unwrap());
        let l3 = triple_to_balls(&Family::Lp3.root()).unwrap();
        assert_eq!(l3[0].1, LensSpace::sphere());
    }

    #[test]
    fn json_node() {
        let n = SlideNode::root(Family::Markov);
        let s = serde_json::to_string(&n).unwrap();
        assert_eq!(
            s,
            r#"{"family":"MARKOV","path":"","entries":[[1,-1,1],[5,1,1],[2,1,1]],"x":[3,3,6]}"#
        );
        let back: SlideNode = serde_json::from_str(&s).unwrap();
        assert_eq!(back, n);
    }
}
