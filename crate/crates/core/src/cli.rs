//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{dual, euc_of_frac, hj_of_frac, hj_reversal_partner, Frac, HjCf};
use crate::catalog::{self, CatalogConfig, Matching};
use crate::cobord::{self, EmbeddingCandidate, SearchConfig};
use crate::farey::{self, TreePath};
use crate::framing::framing_sequence;
use crate::lens::{normalize_ball_params, recognize_ball_boundary, BallParams, LensSpace, Sign};
use crate::slidetree::{self, Family};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "lensball",
    version,
    about = "Rational balls, lens spaces and their embeddings in CP²"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Size bound; its meaning depends on the subcommand
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Tree depth (farey enumerate, slide)
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Directory for cached search results
    #[arg(long, global = true, env = "LENSBALL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Recompute the search even if a cached result exists
    #[arg(long, global = true)]
    no_cache: bool,
    /// Reference table to compare against instead of the built-in one
    #[arg(long, global = true)]
    seed_fixture: Option<PathBuf>,
    /// Worker threads for the search (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// oriented | unoriented
    #[arg(long, global = true, default_value = "oriented")]
    matching: Matching,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Continued fractions
    #[command(subcommand)]
    Cf(CfCmd),
    /// Lens spaces and ball boundaries
    #[command(subcommand)]
    Lens(LensCmd),
    /// The 2-Farey tree
    #[command(subcommand)]
    Farey(FareyCmd),
    /// Signed slide trees (bounded by --bound on max |p|, or by --depth)
    Slide {
        #[arg(long, value_parser = parse_family)]
        family: Family,
    },
    /// ADDC / ADD4 search (--bound is the largest source ball parameter)
    Search {
        #[arg(long, default_value_t = -8, allow_hyphen_values = true)]
        c_min: i64,
        #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
        c_max: i64,
        /// Comma-separated subset of addc,add4
        #[arg(long, default_value = "addc,add4")]
        constructions: String,
    },
    /// Build the catalog and compare it with the reference table (--bound on p3)
    Table,
}

#[derive(Debug, Subcommand)]
enum CfCmd {
    /// Hirzebruch–Jung expansion of p/q
    Hj { frac: Frac },
    /// Value of an HJ continued fraction such as [3,2,2,3]
    Eval { cf: HjCf },
    /// Euclidean expansion and remainders
    Euc { frac: Frac },
    /// p/(p-q)
    Dual { frac: Frac },
    /// The fraction whose HJ expansion is the reverse of that of p/q
    Reverse { frac: Frac },
    /// Framing sequence for B_{p,q}
    Framing { frac: Frac },
}

#[derive(Debug, Subcommand)]
enum LensCmd {
    /// Boundary of the ball B_{p,q}
    Boundary {
        #[arg(value_parser = parse_pair)]
        ball: (BigInt, BigInt),
        /// Use -B_{p,q}
        #[arg(long)]
        negative: bool,
    },
    /// Whether two lens spaces are equivalent
    Equiv {
        #[arg(value_parser = parse_lens)]
        a: LensSpace,
        #[arg(value_parser = parse_lens)]
        b: LensSpace,
        #[arg(long)]
        unoriented: bool,
    },
    /// Signed balls bounded by L(p,q)
    Recognize {
        #[arg(value_parser = parse_lens)]
        lens: LensSpace,
    },
    /// Normal form of ball parameters
    Normalize {
        #[arg(value_parser = parse_pair)]
        ball: (BigInt, BigInt),
    },
}

#[derive(Debug, Subcommand)]
enum FareyCmd {
    /// Path from the root to the node with middle entry p/q
    Locate { frac: Frac },
    /// The node at a path and its two children
    Children {
        #[arg(default_value = "")]
        path: TreePath,
    },
    /// Nodes with all numerators <= --bound (default 16), or to --depth
    Enumerate,
    /// Even q1, q2 making (p1/q1, p2/q2) a 2-Farey pair
    Complete { p1: BigInt, p2: BigInt },
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p = p.trim().parse::<BigInt>().map_err(|e| e.to_string())?;
    let q = q.trim().parse::<BigInt>().map_err(|e| e.to_string())?;
    Ok((p, q))
}

fn parse_lens(s: &str) -> Result<LensSpace, String> {
    let (p, q) = parse_pair(s)?;
    LensSpace::new(p, q).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(&s.to_ascii_uppercase().replace('-', "_")).map_err(|e| e.to_string())
}

/// Collected output of a subcommand.
struct Output {
    stdout: String,
    stderr: String,
    status: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            status: 0,
        }
    }
}

struct Records {
    text: Vec<String>,
    json: Vec<Value>,
    header: &'static str,
    csv: Vec<String>,
}

impl Records {
    fn new(header: &'static str) -> Self {
        Records {
            text: Vec::new(),
            json: Vec::new(),
            header,
            csv: Vec::new(),
        }
    }

    fn push(&mut self, text: String, json: Value, csv: String) {
        self.text.push(text);
        self.json.push(json);
        self.csv.push(csv);
    }

    fn render(self, f: Format) -> String {
        let mut out = String::new();
        match f {
            Format::Text => self.text.iter().for_each(|l| {
                let _ = writeln!(out, "{l}");
            }),
            Format::Json => self.json.iter().for_each(|v| {
                let _ = writeln!(out, "{v}");
            }),
            Format::Csv => {
                let _ = writeln!(out, "{}", self.header);
                self.csv.iter().for_each(|l| {
                    let _ = writeln!(out, "{l}");
                });
            }
        }
        out
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialise")
}

fn spaced<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

type CmdResult = Result<Output, String>;

fn cf(cmd: CfCmd, f: Format) -> CmdResult {
    let e = |x: crate::arith::ArithError| x.to_string();
    let mut r;
    match cmd {
        CfCmd::Hj { frac } => {
            let cf = hj_of_frac(&frac).map_err(e)?;
            r = Records::new("frac,hj");
            r.push(
                cf.to_string(),
                json!({"frac": frac, "hj": cf}),
                format!("{frac},{}", spaced(cf.coeffs())),
            );
        }
        CfCmd::Eval { cf } => {
            let v = cf.value();
            r = Records::new("hj,frac");
            r.push(
                v.to_string(),
                json!({"hj": cf, "frac": v}),
                format!("{},{v}", spaced(cf.coeffs())),
            );
        }
        CfCmd::Euc { frac } => {
            let run = euc_of_frac(&frac).map_err(e)?;
            r = Records::new("frac,euc,remainders");
            r.push(
                format!("{} remainders {}", run.cf, spaced(&run.remainders)),
                json!({"frac": frac, "euc": run.cf, "remainders": run.remainders.iter().map(ToString::to_string).collect::<Vec<_>>()}),
                format!("{frac},{},{}", spaced(run.cf.coeffs()), spaced(&run.remainders)),
            );
        }
        CfCmd::Dual { frac } => {
            let d = dual(&frac).map_err(e)?;
            r = Records::new("frac,dual");
            r.push(
                d.to_string(),
                json!({"frac": frac, "dual": d}),
                format!("{frac},{d}"),
            );
        }
        CfCmd::Reverse { frac } => {
            let d = hj_reversal_partner(&frac).map_err(e)?;
            r = Records::new("frac,reverse");
            r.push(
                d.to_string(),
                json!({"frac": frac, "reverse": d}),
                format!("{frac},{d}"),
            );
        }
        CfCmd::Framing { frac } => {
            let s = framing_sequence(frac.p().clone(), frac.q().clone()).map_err(e)?;
            r = Records::new("frac,framing,separator");
            r.push(
                s.to_string(),
                json!({"frac": frac, "framing": s}),
                format!("{frac},{},{}", spaced(&s.entries), s.separator),
            );
        }
    }
    Ok(Output::ok(r.render(f)))
}

fn lens(cmd: LensCmd, f: Format) -> CmdResult {
    let mut r;
    match cmd {
        LensCmd::Boundary {
            ball: (p, q),
            negative,
        } => {
            let sign = if negative { Sign::Minus } else { Sign::Plus };
            let b = BallParams::new(p, q, sign).map_err(|e| e.to_string())?;
            let l = b.boundary();
            r = Records::new("ball,p,q");
            r.push(
                l.to_string(),
                json!({"ball": b, "boundary": l}),
                format!("{b},{},{}", l.p(), l.q()),
            );
        }
        LensCmd::Equiv { a, b, unoriented } => {
            let eq = if unoriented {
                a.equiv_unoriented(&b)
            } else {
                a.equiv_oriented(&b)
            };
            r = Records::new("a,b,equivalent");
            r.push(
                eq.to_string(),
                json!({"a": a, "b": b, "unoriented": unoriented, "equivalent": eq}),
                format!("{} {},{} {},{eq}", a.p(), a.q(), b.p(), b.q()),
            );
        }
        LensCmd::Recognize { lens } => {
            let balls = recognize_ball_boundary(&lens);
            r = Records::new("lens,ball");
            if balls.is_empty() {
                r.text.push("none".to_string());
            }
            for b in &balls {
                r.push(
                    b.to_string(),
                    json!({"lens": lens, "ball": b}),
                    format!("{} {},{b}", lens.p(), lens.q()),
                );
            }
        }
        LensCmd::Normalize { ball: (p, q) } => {
            let b = normalize_ball_params(p, q).map_err(|e| e.to_string())?;
            r = Records::new("ball");
            r.push(b.to_string(), json!({"ball": b}), b.to_string());
        }
    }
    Ok(Output::ok(r.render(f)))
}

fn node_record(r: &mut Records, n: &farey::TripleNode) {
    let [a, b, c] = &n.fracs;
    let path = if n.path.depth() == 0 {
        "-".to_string()
    } else {
        n.path.to_string()
    };
    r.push(
        format!("{path} {n}"),
        to_json(n),
        format!("{},{a},{b},{c}", n.path),
    );
}

fn farey_cmd(cmd: FareyCmd, g: &Global) -> CmdResult {
    let mut r;
    match cmd {
        FareyCmd::Locate { frac } => {
            let path = farey::locate(&frac).map_err(|e| e.to_string())?;
            r = Records::new("frac,path");
            r.push(
                path.to_string(),
                json!({"frac": frac, "path": path.to_string()}),
                format!("{frac},{path}"),
            );
        }
        FareyCmd::Children { path } => {
            let n = farey::node_at(&farey::two_farey_root(), &path);
            let (lc, rc) = farey::children(&n);
            r = Records::new("path,f1,f2,f3");
            for x in [&n, &lc, &rc] {
                node_record(&mut r, x);
            }
        }
        FareyCmd::Enumerate => {
            let nodes = match (g.depth, g.bound) {
                (Some(d), None) => farey::enumerate_depth(&farey::two_farey_root(), d),
                (_, b) => farey::enumerate_two_farey(b.unwrap_or(16)),
            };
            r = Records::new("path,f1,f2,f3");
            for n in &nodes {
                node_record(&mut r, n);
            }
        }
        FareyCmd::Complete { p1, p2 } => {
            let (q1, q2) =
                farey::complete_pair(p1.clone(), p2.clone()).map_err(|e| e.to_string())?;
            r = Records::new("p1,q1,p2,q2");
            r.push(
                format!("{p1}/{q1} {p2}/{q2}"),
                json!({"pair": [[p1.to_string(), q1.to_string()], [p2.to_string(), q2.to_string()]]}),
                format!("{p1},{q1},{p2},{q2}"),
            );
        }
    }
    Ok(Output::ok(r.render(g.format)))
}

fn slide(family: Family, g: &Global) -> CmdResult {
    let nodes = match (g.depth, g.bound) {
        (Some(d), None) => slidetree::enumerate_depth(family, d),
        (_, b) => slidetree::enumerate(family, b.unwrap_or(100)),
    };
    let mut r = Records::new("family,path,p1,q1,d1,p2,q2,d2,p3,q3,d3");
    for n in &nodes {
        let path = if n.path.depth() == 0 {
            "-".to_string()
        } else {
            n.path.to_string()
        };
        let cells: Vec<String> = n
            .entries
            .entries
            .iter()
            .map(|e| format!("{},{},{}", e.p, e.q, e.delta.as_i64()))
            .collect();
        r.push(
            format!("{path} {}", n.entries),
            to_json(n),
            format!("{},{},{}", family.name(), n.path, cells.join(",")),
        );
    }
    Ok(Output::ok(r.render(g.format)))
}

fn search_config(
    g: &Global,
    c_min: i64,
    c_max: i64,
    constructions: &str,
) -> Result<SearchConfig, String> {
    let mut cfg = SearchConfig {
        c_min,
        c_max,
        addc: false,
        add4: false,
        ..SearchConfig::default()
    };
    if let Some(b) = g.bound {
        cfg.bound_p = b;
    }
    for c in constructions
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        match c.to_ascii_lowercase().as_str() {
            "addc" => cfg.addc = true,
            "add4" => cfg.add4 = true,
            other => return Err(format!("unknown construction {other:?} (addc|add4)")),
        }
    }
    Ok(cfg)
}

fn run_search(cfg: &SearchConfig, g: &Global) -> Result<cobord::SearchOutcome, String> {
    let dir = g.cache_dir.as_deref();
    let res = if g.no_cache {
        let out = match g.workers {
            Some(w) => cobord::search_with_workers(cfg, w),
            None => cobord::search(cfg),
        };
        match dir {
            Some(d) => cobord::cache::store(d, &out).map(|_| out),
            None => Ok(out),
        }
    } else {
        cobord::cache::search_cached(cfg, g.workers, dir)
    };
    res.map_err(|e| format!("cache: {e}"))
}

fn input_cell(c: &EmbeddingCandidate) -> String {
    match &c.input {
        cobord::CandidateInput::Addc { pq, rs, c, tu } => format!("pq={pq} rs={rs} c={c} tu={tu}"),
        cobord::CandidateInput::Add4 { a, j, tu } => {
            format!("a={} j={j} tu={tu}", spaced(a.coeffs()))
        }
        cobord::CandidateInput::Farey { path, .. } => format!("path={path}"),
        cobord::CandidateInput::Slide { family, path, .. } => {
            format!("family={} path={path}", family.name())
        }
    }
}

fn search_cmd(cfg: SearchConfig, g: &Global) -> CmdResult {
    let outcome = run_search(&cfg, g)?;
    let mut out = String::new();
    match g.format {
        Format::Json => {
            for c in &outcome.candidates {
                out.push_str(&serde_json::to_string(c).expect("candidates serialise"));
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("construction,sign,p1,q1,p2,q2,p3,q3,input\n");
            for c in &outcome.candidates {
                let ls: Vec<String> = c
                    .cp2_boundaries()
                    .iter()
                    .map(|l| format!("{},{}", l.p(), l.q()))
                    .collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    c.construction.name(),
                    c.sign.as_i64(),
                    ls.join(","),
                    input_cell(c)
                );
            }
        }
        Format::Text => {
            for grp in outcome.groups() {
                let key: Vec<String> = grp.key.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}", key.join(" "));
                for c in &grp.candidates {
                    let balls: Vec<String> = c.balls.iter().map(ToString::to_string).collect();
                    let _ = writeln!(
                        out,
                        "  {} {}  [{}]  sign {}",
                        c.construction.name(),
                        input_cell(c),
                        balls.join(", "),
                        c.sign
                    );
                }
            }
        }
    }
    let s = &outcome.stats;
    let rejected: Vec<String> = s.rejected.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let stderr = format!(
        "search: {} attempts, {} accepted, {} groups; rejected {}\n",
        s.attempts,
        s.accepted,
        outcome.groups().len(),
        rejected.join(" ")
    );
    Ok(Output {
        stdout: out,
        stderr,
        status: 0,
    })
}

fn table(g: &Global) -> CmdResult {
    let fixture = match &g.seed_fixture {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            catalog::parse_fixture(&text).map_err(|e| e.to_string())?
        }
        None => catalog::table1(),
    };
    let config = CatalogConfig {
        bound: g.bound.unwrap_or(256),
        matching: g.matching,
        ..CatalogConfig::default()
    };
    if config.bound < 4 {
        return Err("--bound must be at least 4".to_string());
    }
    let outcome = run_search(&config.search, g)?;
    let cat = catalog::build_catalog_with(&config, &outcome);
    let report = catalog::compare_to_fixture(&cat, &fixture);
    let text = catalog::render_report(&report);
    let (stdout, stderr) = match g.format {
        Format::Text => (text, String::new()),
        Format::Csv => (catalog::render_csv(&report), text),
        Format::Json => (catalog::render_jsonl(&report), text),
    };
    Ok(Output {
        stdout,
        stderr,
        status: report.exit_status(),
    })
}

fn dispatch(cli: Cli) -> CmdResult {
    let g = &cli.global;
    match cli.cmd {
        Cmd::Cf(c) => cf(c, g.format),
        Cmd::Lens(c) => lens(c, g.format),
        Cmd::Farey(c) => farey_cmd(c, g),
        Cmd::Slide { family } => slide(family, g),
        Cmd::Search {
            c_min,
            c_max,
            constructions,
        } => {
            let cfg = search_config(g, c_min, c_max, &constructions)?;
            search_cmd(cfg, g)
        }
        Cmd::Table => table(g),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the exit status: 0 on success, 1 on a failed table comparison,
/// 2 on usage or input errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(msg.as_bytes())
            } else {
                stderr.write_all(msg.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(o) => {
            let _ = stdout.write_all(o.stdout.as_bytes());
            let _ = stderr.write_all(o.stderr.as_bytes());
            o.status
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (out, err) = (std::io::stdout(), std::io::stderr());
    let code = run(args, &mut out.lock(), &mut err.lock());
    let _ = std::io::stdout().flush();
    code
}
