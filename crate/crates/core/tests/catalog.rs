use std::sync::OnceLock;

use lensball::catalog::{
    self, build_catalog_with, compare_to_fixture, Catalog, CatalogConfig, Matching, Source, Verdict,
};
use lensball::cobord::{self, SearchOutcome};
use lensball::lens::LensSpace;

fn outcome() -> &'static SearchOutcome {
    static O: OnceLock<SearchOutcome> = OnceLock::new();
    O.get_or_init(|| cobord::search(&Default::default()))
}

fn catalog(m: Matching) -> Catalog {
    build_catalog_with(
        &CatalogConfig {
            matching: m,
            ..Default::default()
        },
        outcome(),
    )
}

fn key(m: Matching, rows: [(i64, i64); 3]) -> [LensSpace; 3] {
    m.key(&rows.map(|(p, q)| LensSpace::new(p, q).unwrap()))
}

#[test]
fn worked_rows() {
    let c = catalog(Matching::Oriented);
    let first = c
        .get(&key(Matching::Oriented, [(4, 1), (9, 4), (25, 6)]))
        .unwrap();
    assert!(first.sources.contains(&Source::Farey) && first.sources.contains(&Source::Lp));
    assert!(c
        .get(&key(Matching::Oriented, [(9, 4), (25, 11), (49, 15)]))
        .is_none());
    let u = catalog(Matching::Unoriented);
    let add4 = u
        .get(&key(Matching::Unoriented, [(4, 1), (9, 4), (49, 22)]))
        .unwrap();
    assert!(add4.sources.contains(&Source::Add4));
}

#[test]
fn rows_are_sorted_canonical_and_sound() {
    for m in [Matching::Oriented, Matching::Unoriented] {
        let c = catalog(m);
        assert!(c.rows.windows(2).all(|w| w[0].lens < w[1].lens));
        for r in &c.rows {
            assert_eq!(m.key(&r.lens), r.lens);
            assert!(catalog::in_window(&r.lens, 256));
            for cand in &r.provenance {
                assert!(cand.revalidate(), "{cand:?}");
                assert_eq!(m.key(&cand.cp2_boundaries()), r.lens);
            }
        }
    }
}

#[test]
fn comparison_verdicts() {
    let fixture = catalog::table1();
    let report = compare_to_fixture(&catalog(Matching::Oriented), &fixture);
    assert_eq!(report.exit_status(), 0);
    assert_eq!(report.count(Verdict::Extra), 0);
    assert_eq!(
        report.count(Verdict::Missing)
            + report.count(Verdict::Match)
            + report.count(Verdict::NotFoundOk),
        65
    );
    for r in &report.rows {
        let f = r.fixture.as_ref().unwrap();
        if f.is_gated() {
            assert_eq!(r.verdict, Verdict::Match, "{f}");
        }
        if r.verdict == Verdict::Missing {
            assert!(r.note.as_deref().unwrap().contains("bound_p=16"), "{f}");
        }
    }
    let csv = catalog::render_csv(&report);
    assert_eq!(csv.lines().count(), 66);
}

#[test]
fn unoriented_matching_merges_mirror_rows() {
    // "9,4 25,9 256,113 yes†" and "9,4 25,11 256,113 no" agree once L(25,9) and L(25,11) are identified
    let report = compare_to_fixture(&catalog(Matching::Unoriented), &catalog::table1());
    let collided: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.key == key(Matching::Unoriented, [(9, 4), (25, 9), (256, 113)]))
        .collect();
    assert_eq!(collided.len(), 2);
    assert!(collided.iter().any(|r| r.verdict == Verdict::Extra));
    assert_eq!(report.exit_status(), 1);
}
