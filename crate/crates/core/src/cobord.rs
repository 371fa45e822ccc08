//! The two gluing constructions and the bounded search over them.
//!
//! **ADDC.** For `p/q = [a1..am]`, `r/s = [b1..bn]` and any integer `c`, let
//! `t/u = [am..a1, c, b1..bn]`. If `p, r, t` are pairwise coprime and the three
//! lens spaces bound rational balls `B, B', B''`, then `B ⊔ B' ⊔ -B''` embeds in
//! a homotopy CP² when `c - q/p - s/r > 0`, and in a homotopy CP̄² otherwise.
//!
//! **ADD4.** Bump one entry of `p/q = [a1..am]` by 4 to get `t/u`. If `p, t` are
//! odd and coprime and both lens spaces bound balls, then
//! `B ⊔ B_{2,1} ⊔ -B''` embeds in a homotopy CP².

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arith::{hj_of_frac, mod_inverse, ArithError, Continuant, Frac, HjCf};
use crate::farey::{self, TreePath, TripleNode};
use crate::lens::{BallFamilyOracle, BallOracle, BallParams, LensSpace, Sign, TabulatedOracle};
use crate::slidetree::{self, Family, SlideNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Construction {
    Addc,
    Add4,
    Farey,
    Slide,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Addc => "ADDC",
            Construction::Add4 => "ADD4",
            Construction::Farey => "FAREY",
            Construction::Slide => "SLIDE",
        }
    }
}

/// Why a candidate was not produced.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("input has no canonical expansion: {0}")]
    NoExpansion(#[from] ArithError),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),
    #[error("t = 0")]
    DegenerateT,
    #[error("{0} is not recognised as a ball boundary")]
    OracleUnrecognized(LensSpace),
    #[error("p = {0} and t = {1} are not both odd and coprime")]
    NotOddCoprime(BigInt, BigInt),
    #[error("index {j} out of range 1..={len}")]
    IndexOutOfRange { j: usize, len: usize },
}

impl Rejection {
    pub fn kind(&self) -> &'static str {
        match self {
            Rejection::NoExpansion(_) => "NO_EXPANSION",
            Rejection::NotCoprime(..) => "NOT_COPRIME",
            Rejection::DegenerateT => "DEGENERATE_T",
            Rejection::OracleUnrecognized(_) => "ORACLE_UNRECOGNIZED",
            Rejection::NotOddCoprime(..) => "NOT_ODD_COPRIME",
            Rejection::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CandidateInput {
    Addc {
        pq: Frac,
        rs: Frac,
        #[serde(with = "crate::json::bigint")]
        c: BigInt,
        tu: Frac,
    },
    Add4 {
        a: HjCf,
        j: usize,
        tu: Frac,
    },
    Farey {
        path: TreePath,
        #[serde(default)]
        above_root: usize,
    },
    Slide {
        family: Family,
        path: TreePath,
        #[serde(default)]
        above_root: usize,
    },
}

/// A realised triple of signed balls with how it was obtained.
///
/// `balls[i].boundary()` is oriented-equivalent to `boundaries[i]`. The signs
/// are those of the construction's own statement; `sign` is `+1` for a
/// homotopy CP² and `-1` for a homotopy CP̄².
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCandidate {
    pub construction: Construction,
    pub input: CandidateInput,
    pub balls: [BallParams; 3],
    pub boundaries: [LensSpace; 3],
    pub sign: Sign,
}

impl EmbeddingCandidate {
    /// The three boundaries as seen from CP².
    ///
    /// ADDC candidates use the orientation under which the search reproduces
    /// the reference table: the stated boundaries reversed when `sign = +1`,
    /// and as stated when `sign = -1` (where the ambient manifold is reversed).
    pub fn cp2_boundaries(&self) -> [LensSpace; 3] {
        match (self.construction, self.sign) {
            (Construction::Addc, Sign::Plus) => {
                self.boundaries.clone().map(|l| l.reverse_orientation())
            }
            (Construction::Addc, Sign::Minus) => self.boundaries.clone(),
            (_, Sign::Plus) => self.boundaries.clone(),
            (_, Sign::Minus) => self.boundaries.clone().map(|l| l.reverse_orientation()),
        }
    }

    /// Sorted unoriented-canonical boundary triple: the deduplication key.
    pub fn unoriented_key(&self) -> [LensSpace; 3] {
        let mut k = self.boundaries.clone().map(|l| l.canonical_unoriented());
        k.sort();
        k
    }

    pub fn from_farey(
        node: &TripleNode,
        above_root: usize,
    ) -> Result<Self, crate::lens::LensError> {
        let mk = |f: &Frac| {
            BallParams::new(f.p().clone(), f.q().clone(), Sign::Minus).map(|b| b.normalized())
        };
        let balls = [
            mk(&node.fracs[0])?,
            mk(&node.fracs[1])?,
            mk(&node.fracs[2])?,
        ];
        let boundaries = balls.clone().map(|b| b.boundary());
        Ok(EmbeddingCandidate {
            construction: Construction::Farey,
            input: CandidateInput::Farey {
                path: node.path.clone(),
                above_root,
            },
            balls,
            boundaries,
            sign: Sign::Plus,
        })
    }

    pub fn from_slide(node: &SlideNode, above_root: usize) -> Result<Self, crate::lens::LensError> {
        let [a, b, c] = slidetree::triple_to_balls(&node.entries)?;
        Ok(EmbeddingCandidate {
            construction: Construction::Slide,
            input: CandidateInput::Slide {
                family: node.family,
                path: node.path.clone(),
                above_root,
            },
            balls: [a.0, b.0, c.0],
            boundaries: [a.1, b.1, c.1],
            sign: Sign::Plus,
        })
    }

    /// Re-derives the candidate from its recorded input and checks the
    /// construction's hypotheses again.
    pub fn revalidate(&self) -> bool {
        let consistent = self
            .balls
            .iter()
            .zip(&self.boundaries)
            .all(|(b, l)| b.boundary().equiv_oriented(l));
        if !consistent {
            return false;
        }
        match &self.input {
            CandidateInput::Addc { pq, rs, c, .. } => match addc(pq, rs, c.clone()) {
                Ok(again) => again.boundaries == self.boundaries && again.sign == self.sign,
                Err(_) => false,
            },
            CandidateInput::Add4 { a, j, .. } => match add4(a, *j) {
                Ok(again) => again.boundaries == self.boundaries,
                Err(_) => false,
            },
            CandidateInput::Farey { path, above_root } => {
                let node = tree_node_with_prefix(path, *above_root);
                farey::validate_two_farey_triple(&node.fracs)
                    && EmbeddingCandidate::from_farey(&node, *above_root)
                        .map(|c| c.boundaries == self.boundaries)
                        .unwrap_or(false)
            }
            CandidateInput::Slide {
                family,
                path,
                above_root,
            } => {
                let node = slide_node_with_prefix(*family, path, *above_root);
                family.check(&node.entries)
                    && EmbeddingCandidate::from_slide(&node, *above_root)
                        .map(|c| c.boundaries == self.boundaries)
                        .unwrap_or(false)
            }
        }
    }
}

fn tree_node_with_prefix(path: &TreePath, above_root: usize) -> TripleNode {
    let chain = farey::enlarged_base_chain();
    let start = if above_root == 0 || above_root > 2 {
        farey::two_farey_root()
    } else {
        chain[2 - above_root].clone()
    };
    farey::node_at(&start, path)
}

fn slide_node_with_prefix(fam: Family, path: &TreePath, above_root: usize) -> SlideNode {
    if above_root == 0 || above_root > 2 {
        return slidetree::node_at(fam, path);
    }
    let start = SlideNode::new(
        fam,
        TreePath::root(),
        fam.pre_root_chain()[2 - above_root].clone(),
    );
    path.steps().iter().fold(start, |n, &s| n.child(s))
}

fn first_ball(oracle: &dyn BallOracle, l: &LensSpace) -> Result<BallParams, Rejection> {
    oracle
        .recognize(l)
        .into_iter()
        .next()
        .ok_or_else(|| Rejection::OracleUnrecognized(l.clone()))
}

fn coprime(a: &BigInt, b: &BigInt) -> Result<(), Rejection> {
    if a.gcd(b).is_one() {
        Ok(())
    } else {
        Err(Rejection::NotCoprime(a.clone(), b.clone()))
    }
}

/// `c - q/p - s/r`; `None` when `p` or `r` is zero.
pub fn euler_number(pq: &Frac, rs: &Frac, c: impl Into<BigInt>) -> Option<BigRational> {
    if pq.p().is_zero() || rs.p().is_zero() {
        return None;
    }
    let c = BigRational::from_integer(c.into());
    Some(
        c - BigRational::new(pq.q().clone(), pq.p().clone())
            - BigRational::new(rs.q().clone(), rs.p().clone()),
    )
}

/// `(t, u)` by plumbing: `t = cpr - qr - ps`, `u = c q̄ r - w r - q̄ s` with
/// `q q̄ = 1 + w p`. Independent of continued fractions; used as a cross-check.
pub fn addc_plumbing(pq: &Frac, rs: &Frac, c: &BigInt) -> Option<(BigInt, BigInt)> {
    let (p, q, r, s) = (pq.p(), pq.q(), rs.p(), rs.q());
    let qbar = mod_inverse(q, p)?;
    let w = (q * &qbar - 1) / p;
    let t = c * p * r - q * r - p * s;
    let u = c * &qbar * r - &w * r - &qbar * s;
    Some((t, u))
}

pub fn addc(pq: &Frac, rs: &Frac, c: impl Into<BigInt>) -> Result<EmbeddingCandidate, Rejection> {
    addc_with(pq, rs, c, &BallFamilyOracle)
}

pub fn addc_with(
    pq: &Frac,
    rs: &Frac,
    c: impl Into<BigInt>,
    oracle: &dyn BallOracle,
) -> Result<EmbeddingCandidate, Rejection> {
    let a = hj_of_frac(pq)?;
    let b = hj_of_frac(rs)?;
    let mut prefix = Continuant::new();
    prefix.extend(a.coeffs().iter().rev());
    addc_from_prefix(pq, rs, &b, &prefix, &c.into(), oracle)
}

/// ADDC with the continuant of `[am..a1]` already computed.
fn addc_from_prefix(
    pq: &Frac,
    rs: &Frac,
    b: &HjCf,
    prefix: &Continuant,
    c: &BigInt,
    oracle: &dyn BallOracle,
) -> Result<EmbeddingCandidate, Rejection> {
    let (p, r) = (pq.p(), rs.p());
    coprime(p, r)?;
    let mut cont = prefix.clone();
    cont.push(c);
    cont.extend(b.coeffs());
    let (t, u) = cont.value().into_parts();
    let sign = Sign::of(&t).ok_or(Rejection::DegenerateT)?;
    let (t, u) = if sign == Sign::Minus {
        (-t, -u)
    } else {
        (t, u)
    };
    coprime(&t, p)?;
    coprime(&t, r)?;
    let l1 = LensSpace::new(p.clone(), pq.q().clone())
        .map_err(|_| Rejection::NotCoprime(p.clone(), pq.q().clone()))?;
    let l2 = LensSpace::new(r.clone(), rs.q().clone())
        .map_err(|_| Rejection::NotCoprime(r.clone(), rs.q().clone()))?;
    let l3 = LensSpace::new(t.clone(), u.clone())
        .map_err(|_| Rejection::NotCoprime(t.clone(), u.clone()))?;
    let b1 = first_ball(oracle, &l1)?;
    let b2 = first_ball(oracle, &l2)?;
    let b3 = first_ball(oracle, &l3)?;
    Ok(EmbeddingCandidate {
        construction: Construction::Addc,
        input: CandidateInput::Addc {
            pq: pq.clone(),
            rs: rs.clone(),
            c: c.clone(),
            tu: Frac::new(t, u).expect("t != 0"),
        },
        balls: [b1, b2, b3.negate()],
        boundaries: [l1, l2, l3.reverse_orientation()],
        sign,
    })
}

pub fn add4(a: &HjCf, j: usize) -> Result<EmbeddingCandidate, Rejection> {
    add4_with(a, j, &BallFamilyOracle)
}

/// `j` is 1-based.
pub fn add4_with(
    a: &HjCf,
    j: usize,
    oracle: &dyn BallOracle,
) -> Result<EmbeddingCandidate, Rejection> {
    if j == 0 || j > a.len() {
        return Err(Rejection::IndexOutOfRange { j, len: a.len() });
    }
    let pq = a.value();
    if !a.is_canonical() || hj_of_frac(&pq).as_ref() != Ok(a) {
        return Err(Rejection::NoExpansion(ArithError::NoHjExpansion(pq)));
    }
    let mut b = a.clone();
    b.0[j - 1] += 4;
    let (t, u) = b.value().into_parts();
    let (p, q) = (pq.p(), pq.q());
    if !(p.is_odd() && t.is_odd() && t.is_positive() && p.gcd(&t).is_one()) {
        return Err(Rejection::NotOddCoprime(p.clone(), t));
    }
    let l1 = LensSpace::new(p.clone(), q.clone())
        .map_err(|_| Rejection::NotCoprime(p.clone(), q.clone()))?;
    let l3 = LensSpace::new(t.clone(), u.clone())
        .map_err(|_| Rejection::NotCoprime(t.clone(), u.clone()))?;
    let b1 = first_ball(oracle, &l1)?;
    let b3 = first_ball(oracle, &l3)?;
    let b2 = BallParams::new(2, 1, Sign::Plus).expect("B_{2,1}");
    let l2 = b2.boundary();
    Ok(EmbeddingCandidate {
        construction: Construction::Add4,
        input: CandidateInput::Add4 {
            a: a.clone(),
            j,
            tu: Frac::new(t, u).expect("t odd"),
        },
        balls: [b1, b2, b3.negate()],
        boundaries: [l1, l2, l3.reverse_orientation()],
        sign: Sign::Plus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JPolicy {
    All,
    Only(Vec<usize>),
}

impl JPolicy {
    fn indices(&self, len: usize) -> Vec<usize> {
        match self {
            JPolicy::All => (1..=len).collect(),
            JPolicy::Only(v) => v.iter().copied().filter(|&j| j >= 1 && j <= len).collect(),
        }
    }
}

/// Search ranges. Sources are the lens spaces `±∂B_{a,b}` with `2 <= a <= bound_p`,
/// written as `a²/q` for both `q` and `q⁻¹`. The resulting third lens space is
/// recognised without a size limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub bound_p: u64,
    pub c_min: i64,
    pub c_max: i64,
    pub addc: bool,
    pub add4: bool,
    pub j_policy: JPolicy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bound_p: 16,
            c_min: -8,
            c_max: 12,
            addc: true,
            add4: true,
            j_policy: JPolicy::All,
        }
    }
}

/// Counts of accepted candidates and of rejections by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub attempts: u64,
    pub accepted: u64,
    pub rejected: BTreeMap<String, u64>,
}

impl SearchStats {
    fn record(&mut self, r: &Result<EmbeddingCandidate, Rejection>) {
        self.attempts += 1;
        match r {
            Ok(_) => self.accepted += 1,
            Err(e) => *self.rejected.entry(e.kind().to_string()).or_default() += 1,
        }
    }
}

/// Candidates whose boundary triples agree up to orientation and order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateGroup {
    pub key: [LensSpace; 3],
    pub candidates: Vec<EmbeddingCandidate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub candidates: Vec<EmbeddingCandidate>,
    pub stats: SearchStats,
}

impl SearchOutcome {
    /// Deduplicated view, ordered by key; provenance order is generation order.
    pub fn groups(&self) -> Vec<CandidateGroup> {
        let mut map: BTreeMap<[LensSpace; 3], Vec<EmbeddingCandidate>> = BTreeMap::new();
        for c in &self.candidates {
            map.entry(c.unoriented_key()).or_default().push(c.clone());
        }
        map.into_iter()
            .map(|(key, candidates)| CandidateGroup { key, candidates })
            .collect()
    }
}

/// Source fractions `a²/q`, sorted and deduplicated.
pub fn search_sources(bound_p: u64) -> Vec<Frac> {
    let mut out = Vec::new();
    for a in 2..=bound_p {
        for b in 0..=a / 2 {
            let Ok(ball) = BallParams::new(a, b, Sign::Plus) else {
                continue;
            };
            for s in [Sign::Plus, Sign::Minus] {
                let l = ball.with_sign(s).boundary();
                let inv = mod_inverse(l.q(), l.p()).expect("coprime");
                for q in [l.q().clone(), inv] {
                    out.push(Frac::new(l.p().clone(), q).expect("p > 0"));
                }
            }
        }
    }
    out.sort_by(|x, y| (x.p(), x.q()).cmp(&(y.p(), y.q())));
    out.dedup();
    out
}

/// Runs the search on the current rayon pool. Output order is deterministic.
pub fn search(config: &SearchConfig) -> SearchOutcome {
    let oracle = TabulatedOracle::new(config.bound_p);
    let sources = search_sources(config.bound_p);
    let expansions: Vec<HjCf> = sources
        .iter()
        .map(|f| hj_of_frac(f).expect("sources are canonical"))
        .collect();
    let cs: Vec<BigInt> = if config.c_min <= config.c_max {
        (config.c_min..=config.c_max).map(BigInt::from).collect()
    } else {
        Vec::new()
    };

    let addc_results: Vec<Vec<Result<EmbeddingCandidate, Rejection>>> = if config.addc {
        (0..sources.len())
            .into_par_iter()
            .map(|i| {
                let mut prefix = Continuant::new();
                prefix.extend(expansions[i].coeffs().iter().rev());
                let mut out = Vec::new();
                for (k, rs) in sources.iter().enumerate() {
                    for c in &cs {
                        out.push(addc_from_prefix(
                            &sources[i],
                            rs,
                            &expansions[k],
                            &prefix,
                            c,
                            &oracle,
                        ));
                    }
                }
                out
            })
            .collect()
    } else {
        Vec::new()
    };

    let add4_results: Vec<Vec<Result<EmbeddingCandidate, Rejection>>> = if config.add4 {
        expansions
            .par_iter()
            .zip(sources.par_iter())
            .filter(|(_, f)| f.p().is_odd())
            .map(|(a, _)| {
                config
                    .j_policy
                    .indices(a.len())
                    .into_iter()
                    .map(|j| add4_with(a, j, &oracle))
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut stats = SearchStats::default();
    let mut candidates = Vec::new();
    for r in addc_results.into_iter().chain(add4_results).flatten() {
        stats.record(&r);
        if let Ok(c) = r {
            candidates.push(c);
        }
    }
    SearchOutcome {
        config: config.clone(),
        candidates,
        stats,
    }
}

/// Runs the search on a dedicated pool of `workers` threads.
pub fn search_with_workers(config: &SearchConfig, workers: usize) -> SearchOutcome {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(|| search(config)),
        Err(_) => search(config),
    }
}

/// Line-delimited cache of search outcomes, keyed by a hash of the configuration.
pub mod cache {
    use super::*;

    const SCHEMA: u32 = 1;

    #[derive(Serialize, Deserialize)]
    struct Header {
        schema: u32,
        config: SearchConfig,
        stats: SearchStats,
    }

    pub fn config_key(config: &SearchConfig) -> String {
        let json = serde_json::to_string(config).expect("config serialises");
        let digest = Sha256::digest(format!("lensball-search-v{SCHEMA}\n{json}").as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path_for(dir: &Path, config: &SearchConfig) -> PathBuf {
        dir.join(format!("search-{}.jsonl", config_key(config)))
    }

    /// `Ok(None)` when there is no usable entry (missing, other schema, or other config).
    pub fn load(dir: &Path, config: &SearchConfig) -> io::Result<Option<SearchOutcome>> {
        let path = path_for(dir, config);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut lines = io::BufReader::new(file).lines();
        let Some(first) = lines.next().transpose()? else {
            return Ok(None);
        };
        let Ok(header) = serde_json::from_str::<Header>(&first) else {
            return Ok(None);
        };
        if header.schema != SCHEMA || header.config != *config {
            return Ok(None);
        }
        let mut candidates = Vec::new();
        for line in lines {
            let line = line?;
            match serde_json::from_str(&line) {
                Ok(c) => candidates.push(c),
                Err(_) => return Ok(None),
            }
        }
        Ok(Some(SearchOutcome {
            config: header.config,
            candidates,
            stats: header.stats,
        }))
    }

    pub fn store(dir: &Path, outcome: &SearchOutcome) -> io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = path_for(dir, &outcome.config);
        let tmp = path.with_extension(format!("jsonl.tmp{}", std::process::id()));
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            let header = Header {
                schema: SCHEMA,
                config: outcome.config.clone(),
                stats: outcome.stats.clone(),
            };
            serde_json::to_writer(&mut w, &header)?;
            w.write_all(b"\n")?;
            for c in &outcome.candidates {
                serde_json::to_writer(&mut w, c)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads from `dir` if possible, otherwise searches and stores.
    pub fn search_cached(
        config: &SearchConfig,
        workers: Option<usize>,
        dir: Option<&Path>,
    ) -> io::Result<SearchOutcome> {
        if let Some(dir) = dir {
            if let Some(hit) = load(dir, config)? {
                return Ok(hit);
            }
        }
        let outcome = match workers {
            Some(w) => search_with_workers(config, w),
            None => search(config),
        };
        if let Some(dir) = dir {
            store(dir, &outcome)?;
        }
        Ok(outcome)
    }
}
