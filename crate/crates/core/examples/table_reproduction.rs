//! Build the catalog and compare it with the reference table.

use lensball::catalog::{build_catalog, compare_to_fixture, table1, CatalogConfig, Verdict};

pub fn run_example() -> Vec<String> {
    let catalog = build_catalog(&CatalogConfig::default());
    let report = compare_to_fixture(&catalog, &table1());
    let mut out = vec![format!(
        "{} realised rows in the window",
        catalog.rows.len()
    )];
    for v in [
        Verdict::Match,
        Verdict::Missing,
        Verdict::Extra,
        Verdict::NotFoundOk,
    ] {
        out.push(format!("{}: {}", v.name(), report.count(v)));
    }
    for r in report.rows.iter().filter(|r| r.verdict == Verdict::Missing) {
        out.push(format!("missing {}", r.fixture.as_ref().unwrap()));
    }
    out.push(format!("exit status {}", report.exit_status()));
    out
}

#[allow(dead_code)]
fn main() {
    run_example().iter().for_each(|l| println!("{l}"));
}
