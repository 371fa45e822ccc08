//! The catalog of realised lens-space triples and its comparison with the
//! reference table shipped in `data/table1.txt`.
//!
//! Sources: the 2-Farey tree (`FAREY`, table marker `*`), the Lisca–Parma slide
//! trees (`LP`, marker `†`), and the ADDC / ADD4 search. Each source yields
//! three boundaries as seen from CP²; a row is the sorted triple of their
//! canonical forms under the chosen [`Matching`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::cobord::{
    self, Construction, EmbeddingCandidate, SearchConfig, SearchOutcome, SearchStats,
};
use crate::farey;
use crate::lens::LensSpace;
use crate::slidetree::{self, Family};

/// The reference table: 65 rows, one per line.
pub const TABLE1: &str = include_str!("../data/table1.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("fixture line {line}: {msg}: {text:?}")]
    Parse {
        line: usize,
        msg: &'static str,
        text: String,
    },
}

/// How boundaries are compared. `Oriented` keeps `L(p,q)` apart from
/// `L(p,-q)`; `Unoriented` identifies them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Matching {
    #[default]
    Oriented,
    Unoriented,
}

impl Matching {
    pub fn canonical(self, l: &LensSpace) -> LensSpace {
        match self {
            Matching::Oriented => l.canonical_oriented(),
            Matching::Unoriented => l.canonical_unoriented(),
        }
    }

    pub fn key(self, ls: &[LensSpace; 3]) -> RowKey {
        let mut k = ls.clone().map(|l| self.canonical(&l));
        k.sort();
        k
    }
}

impl FromStr for Matching {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oriented" => Ok(Matching::Oriented),
            "unoriented" => Ok(Matching::Unoriented),
            _ => Err(format!("unknown matching {s:?} (oriented|unoriented)")),
        }
    }
}

pub type RowKey = [LensSpace; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    Farey,
    Lp,
    Addc,
    Add4,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Farey => "FAREY",
            Source::Lp => "LP",
            Source::Addc => "ADDC",
            Source::Add4 => "ADD4",
        }
    }

    fn of(c: &EmbeddingCandidate) -> Source {
        match c.construction {
            Construction::Farey => Source::Farey,
            Construction::Slide => Source::Lp,
            Construction::Addc => Source::Addc,
            Construction::Add4 => Source::Add4,
        }
    }
}

fn join_sources(s: &BTreeSet<Source>) -> String {
    s.iter().map(|x| x.name()).collect::<Vec<_>>().join("+")
}

/// One line of the reference table, as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureRow {
    pub lens: [LensSpace; 3],
    pub realised: bool,
    pub star: bool,
    pub dagger: bool,
    pub line: usize,
}

impl FixtureRow {
    /// Sources the markers require.
    pub fn required(&self) -> BTreeSet<Source> {
        let mut s = BTreeSet::new();
        if self.star {
            s.insert(Source::Farey);
        }
        if self.dagger {
            s.insert(Source::Lp);
        }
        s
    }

    pub fn marker(&self) -> String {
        let mut m = String::new();
        if self.star {
            m.push('*');
        }
        if self.dagger {
            m.push('†');
        }
        m
    }

    pub fn is_gated(&self) -> bool {
        self.star || self.dagger
    }
}

impl fmt::Display for FixtureRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.lens;
        write!(
            f,
            "{},{} {},{} {},{} {}",
            a.p(),
            a.q(),
            b.p(),
            b.q(),
            c.p(),
            c.q(),
            if self.realised { "yes" } else { "no" }
        )?;
        let m = self.marker();
        if !m.is_empty() {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg| FixtureError::Parse {
            line,
            msg,
            text: raw.to_string(),
        };
        let words: Vec<&str> = body.split_whitespace().collect();
        if words.len() < 4 {
            return Err(err("expected three p,q pairs and a verdict"));
        }
        let mut lens = Vec::with_capacity(3);
        for w in &words[..3] {
            let (p, q) = w.split_once(',').ok_or_else(|| err("pair must be p,q"))?;
            let p: BigInt = p.parse().map_err(|_| err("bad integer"))?;
            let q: BigInt = q.parse().map_err(|_| err("bad integer"))?;
            lens.push(LensSpace::new(p, q).map_err(|_| err("not a lens space"))?);
        }
        let rest = words[3..].concat();
        let (realised, tags) = if let Some(t) = rest.strip_prefix("yes") {
            (true, t)
        } else if let Some(t) = rest.strip_prefix("no") {
            (false, t)
        } else {
            return Err(err("verdict must be yes or no"));
        };
        let (mut star, mut dagger) = (false, false);
        for ch in tags.chars() {
            match ch {
                '*' => star = true,
                '†' => dagger = true,
                _ => return Err(err("unknown marker")),
            }
        }
        if !realised && (star || dagger) {
            return Err(err("markers only apply to yes rows"));
        }
        let lens: [LensSpace; 3] = lens.try_into().expect("three pairs");
        rows.push(FixtureRow {
            lens,
            realised,
            star,
            dagger,
            line,
        });
    }
    Ok(rows)
}

/// The embedded reference table.
pub fn table1() -> Vec<FixtureRow> {
    parse_fixture(TABLE1).expect("embedded fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogConfig {
    /// Upper bound on the lens-space orders `p_i` of a row.
    pub bound: u64,
    pub matching: Matching,
    pub search: SearchConfig,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        CatalogConfig {
            bound: 256,
            matching: Matching::Oriented,
            search: SearchConfig::default(),
        }
    }
}

/// A realised triple with every construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub lens: RowKey,
    pub sources: BTreeSet<Source>,
    #[serde(skip)]
    pub provenance: Vec<EmbeddingCandidate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub config: CatalogConfig,
    pub rows: Vec<CatalogRow>,
    pub search_stats: SearchStats,
}

impl Catalog {
    pub fn get(&self, key: &RowKey) -> Option<&CatalogRow> {
        self.rows
            .binary_search_by(|r| r.lens.cmp(key))
            .ok()
            .map(|i| &self.rows[i])
    }

    pub fn keys_with(&self, s: Source) -> BTreeSet<RowKey> {
        self.rows
            .iter()
            .filter(|r| r.sources.contains(&s))
            .map(|r| r.lens.clone())
            .collect()
    }
}

/// `4 <= p1 < p2 < p3 <= bound` on a sorted key.
pub fn in_window(key: &RowKey, bound: u64) -> bool {
    let b = BigInt::from(bound);
    let [a, c, d] = key;
    *a.p() >= BigInt::from(4) && a.p() < c.p() && c.p() < d.p() && *d.p() <= b
}

/// Candidates from the 2-Farey tree and the three Lisca–Parma families whose
/// balls have parameter `<= sqrt(bound)`.
pub fn tree_candidates(bound: u64) -> Vec<EmbeddingCandidate> {
    let ball_bound = bound.sqrt();
    let mut out = Vec::new();
    for n in farey::enumerate_two_farey(ball_bound) {
        out.push(EmbeddingCandidate::from_farey(&n, 0).expect("2-Farey entries have gcd <= 2"));
    }
    for fam in [Family::Markov, Family::Lp2, Family::Lp3] {
        for n in slidetree::enumerate(fam, ball_bound) {
            out.push(EmbeddingCandidate::from_slide(&n, 0).expect("slide entries have gcd <= 2"));
        }
    }
    out
}

pub fn build_catalog(config: &CatalogConfig) -> Catalog {
    let outcome = cobord::search(&config.search);
    build_catalog_with(config, &outcome)
}

/// Builds from an already computed (or cached) search outcome.
pub fn build_catalog_with(config: &CatalogConfig, outcome: &SearchOutcome) -> Catalog {
    let mut map: BTreeMap<RowKey, CatalogRow> = BTreeMap::new();
    let all = tree_candidates(config.bound)
        .into_iter()
        .chain(outcome.candidates.iter().cloned());
    for c in all {
        let key = config.matching.key(&c.cp2_boundaries());
        if !in_window(&key, config.bound) {
            continue;
        }
        let row = map.entry(key.clone()).or_insert_with(|| CatalogRow {
            lens: key,
            sources: BTreeSet::new(),
            provenance: Vec::new(),
        });
        row.sources.insert(Source::of(&c));
        row.provenance.push(c);
    }
    Catalog {
        config: config.clone(),
        rows: map.into_values().collect(),
        search_stats: outcome.stats.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    Missing,
    Extra,
    NotFoundOk,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Missing => "MISSING",
            Verdict::Extra => "EXTRA",
            Verdict::NotFoundOk => "NOT_FOUND_OK",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    /// `None` for produced rows that are not in the table.
    pub fixture: Option<FixtureRow>,
    pub key: RowKey,
    pub verdict: Verdict,
    pub produced: BTreeSet<Source>,
    pub note: Option<String>,
}

impl RowReport {
    /// Whether this verdict fails the comparison (exit status 1).
    pub fn is_gating_failure(&self) -> bool {
        match self.verdict {
            Verdict::Missing => self.fixture.as_ref().is_some_and(FixtureRow::is_gated),
            Verdict::Extra => {
                self.produced.contains(&Source::Farey) || self.produced.contains(&Source::Lp)
            }
            _ => false,
        }
    }

    /// Lens parameters as printed in the table, or the canonical key.
    pub fn display_lens(&self) -> &[LensSpace; 3] {
        self.fixture.as_ref().map_or(&self.key, |f| &f.lens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<RowReport>,
    pub config: CatalogConfig,
}

impl Report {
    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    pub fn exit_status(&self) -> i32 {
        i32::from(self.rows.iter().any(RowReport::is_gating_failure))
    }
}

pub fn compare_to_fixture(catalog: &Catalog, fixture: &[FixtureRow]) -> Report {
    let m = catalog.config.matching;
    let s = &catalog.config.search;
    let bounds_note = format!(
        "search bounds: bound_p={}, c in [{}, {}]",
        s.bound_p, s.c_min, s.c_max
    );
    let mut seen: BTreeSet<RowKey> = BTreeSet::new();
    let mut rows = Vec::new();
    for f in fixture {
        let key = m.key(&f.lens);
        seen.insert(key.clone());
        let produced = catalog
            .get(&key)
            .map(|r| r.sources.clone())
            .unwrap_or_default();
        let (verdict, note) = match (f.realised, produced.is_empty()) {
            (true, false) => {
                let lacking: BTreeSet<Source> =
                    f.required().difference(&produced).copied().collect();
                if lacking.is_empty() {
                    (Verdict::Match, None)
                } else {
                    (
                        Verdict::Missing,
                        Some(format!("realised, but not by {}", join_sources(&lacking))),
                    )
                }
            }
            (true, true) => (
                Verdict::Missing,
                (!f.is_gated()).then(|| bounds_note.clone()),
            ),
            (false, false) => (Verdict::Extra, None),
            (false, true) => (Verdict::NotFoundOk, None),
        };
        rows.push(RowReport {
            fixture: Some(f.clone()),
            key,
            verdict,
            produced,
            note,
        });
    }
    for r in &catalog.rows {
        if !seen.contains(&r.lens) {
            rows.push(RowReport {
                fixture: None,
                key: r.lens.clone(),
                verdict: Verdict::Extra,
                produced: r.sources.clone(),
                note: Some("not in the table".to_string()),
            });
        }
    }
    Report {
        rows,
        config: catalog.config.clone(),
    }
}

fn lens_cells(ls: &[LensSpace; 3]) -> String {
    ls.iter()
        .map(|l| format!("{},{}", l.p(), l.q()))
        .collect::<Vec<_>>()
        .join(",")
}

/// `p1,q1,p2,q2,p3,q3,realised,sources`, one line per report row.
pub fn render_csv(report: &Report) -> String {
    let mut out = String::from("p1,q1,p2,q2,p3,q3,realised,sources\n");
    for r in &report.rows {
        let realised = if r.produced.is_empty() { "no" } else { "yes" };
        let _ = writeln!(
            out,
            "{},{},{}",
            lens_cells(r.display_lens()),
            realised,
            join_sources(&r.produced)
        );
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    lens: &'a [LensSpace; 3],
    realised: bool,
    sources: &'a BTreeSet<Source>,
    table: Option<String>,
    verdict: Verdict,
}

/// One JSON object per report row.
pub fn render_jsonl(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.rows {
        let row = JsonRow {
            lens: r.display_lens(),
            realised: !r.produced.is_empty(),
            sources: &r.produced,
            table: r.fixture.as_ref().map(|f| f.to_string()),
            verdict: r.verdict,
        };
        out.push_str(&serde_json::to_string(&row).expect("rows serialise"));
        out.push('\n');
    }
    out
}

/// Human-readable verdicts and a summary.
pub fn render_report(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.rows {
        let table = r
            .fixture
            .as_ref()
            .map_or_else(|| "(not in table)".to_string(), |f| f.to_string());
        let _ = write!(
            out,
            "{:<13} {:<28} produced={}",
            r.verdict.name(),
            table,
            if r.produced.is_empty() {
                "-".to_string()
            } else {
                join_sources(&r.produced)
            }
        );
        if let Some(n) = &r.note {
            let _ = write!(out, "  ({n})");
        }
        out.push('\n');
    }
    let fixture_rows = report.rows.iter().filter(|r| r.fixture.is_some()).count();
    let s = &report.config.search;
    let _ = writeln!(
        out,
        "summary: {} table rows; MATCH {}, MISSING {}, EXTRA {}, NOT_FOUND_OK {}; matching={:?}, bound={}, bound_p={}, c in [{}, {}]; exit {}",
        fixture_rows,
        report.count(Verdict::Match),
        report.count(Verdict::Missing),
        report.count(Verdict::Extra),
        report.count(Verdict::NotFoundOk),
        report.config.matching,
        report.config.bound,
        s.bound_p,
        s.c_min,
        s.c_max,
        report.exit_status()
    );
    out
}
