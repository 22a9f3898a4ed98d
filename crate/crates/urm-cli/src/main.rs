//! `urm` — solve, verify, generate and benchmark uniquely restricted
//! matching instances.
//!
//! Exit codes: 0 success (including verified-true), 1 parse error, 2 class
//! or validation failure (witness printed), 3 internal assertion,
//! 4 verified-false.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use urm_core::bipperm::{pair_is_ur_bipperm, solve_bipperm_with};
use urm_core::error::Error;
use urm_core::graph::{parse_graph, write_graph, ParsedGraph, UndirectedGraph};
use urm_core::instances::{
    consecutive_heuristic_baseline, fig1, gen_bipperm, gen_family, gen_intervals, gen_nest,
    gen_unit_intervals, gen_unit_intervals_with_length,
};
use urm_core::intervals::{intersection_graph, ordering_from_proper_rep, parse_ivg, write_ivg};
use urm_core::matching::{parse_matching, write_matching, Matching};
use urm_core::nest::{is_strong_independent, max_sis, parse_nest, NestRep};
use urm_core::ordering::VertexOrdering;
use urm_core::proper::{pair_is_ur_proper, solve_proper};
use urm_core::reduction::solve_interval_urm;
use urm_core::verify::{
    enumerate_alternating_cycles, find_alt_c4_pair, is_matching, is_ur_consecutive, is_ur_oracle,
    ConsecutiveCheck, CYCLE_ENUM_VERTEX_BOUND, ORACLE_VERTEX_BOUND,
};

#[derive(Parser)]
#[command(
    name = "urm",
    about = "Maximum uniquely restricted matchings in interval-like graphs"
)]
struct Cli {
    /// Seed for generators and benchmark instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveClass {
    /// Proper interval graph; `.graph` with an `order:` line or `.ivg`.
    ProperInterval,
    /// Bipartite permutation graph; `.graph` with an `order:` line.
    BipPerm,
    /// General interval graph via the nest reduction; `.ivg`.
    Interval,
    /// Maximum strong independent set of an interval nest digraph; `.nest`.
    NestSis,
}

impl SolveClass {
    fn name(self) -> &'static str {
        match self {
            SolveClass::ProperInterval => "proper-interval",
            SolveClass::BipPerm => "bip-perm",
            SolveClass::Interval => "interval",
            SolveClass::NestSis => "nest-sis",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMethod {
    /// Perfect-matching uniqueness on the matched subgraph (exact).
    Oracle,
    /// No pair of matching edges on a common 4-cycle (interval-like classes).
    Pairwise,
    /// Class pair predicate on consecutive pairs only (needs --class).
    Consecutive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairClass {
    ProperInterval,
    BipPerm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    UnitIntervals,
    Intervals,
    BipPerm,
    Family,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the class-appropriate algorithm.
    Solve(SolveArgs),
    /// Verify that a matching is uniquely restricted.
    Verify(VerifyArgs),
    /// Brute-force maximum uniquely restricted matching (small inputs).
    Oracle(OracleArgs),
    /// Generate a deterministic instance.
    Gen(GenArgs),
    /// Built-in demonstrations.
    Demo(DemoArgs),
    /// Timed runs over a size schedule.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    class: SolveClass,
    #[arg(long)]
    input: PathBuf,
    /// Re-verify the output (pairwise always; oracle when small enough).
    #[arg(long)]
    verify: bool,
    /// Override the edge bound of the interval reduction.
    #[arg(long)]
    force: bool,
    /// Skip transitive-ordering validation and trust the supplied ordering.
    #[arg(long)]
    trust_ordering: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file (`.graph` or `.ivg`).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    matching: PathBuf,
    #[arg(long, value_enum)]
    method: VerifyMethod,
    /// Pair predicate for --method consecutive.
    #[arg(long, value_enum)]
    class: Option<PairClass>,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance file (`.graph` or `.ivg`).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Vertex count (interval kinds).
    #[arg(long)]
    n: Option<usize>,
    /// Coordinate span for interval generators.
    #[arg(long, default_value_t = 100)]
    span: i64,
    /// Cycle length for the family kind (even, >= 4).
    #[arg(long)]
    k: Option<usize>,
    /// Left side size (bip-perm).
    #[arg(long)]
    p: Option<usize>,
    /// Right side size (bip-perm).
    #[arg(long)]
    q: Option<usize>,
    /// Where to write the family kind's reference matching
    /// (default: output path with a `.matching` extension).
    #[arg(long)]
    matching_out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// Demo name; `fig1` shows the consecutive-edges pitfall instance.
    name: String,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    class: SolveClass,
    /// Comma-separated instance sizes (vertex counts).
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Re-verify each output where feasible.
    #[arg(long)]
    verify: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match std::panic::catch_unwind(move || run(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
        Err(_) => 3,
    };
    std::process::exit(code);
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Oracle(args) => cmd_oracle(&cli, args),
        Command::Gen(args) => cmd_gen(&cli, args),
        Command::Demo(args) => cmd_demo(&cli, args),
        Command::Bench(args) => cmd_bench(&cli, args),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

/// Loads a graph plus an ordering: from a `.graph` file's `order:` line, or
/// derived from the left endpoints of a proper `.ivg` representation.
fn load_ordered_instance(
    path: &Path,
    derive_from_intervals: bool,
) -> Result<(UndirectedGraph, VertexOrdering), Error> {
    match extension(path) {
        "graph" => {
            let ParsedGraph { graph, ordering } = parse_graph(&read_file(path)?)?;
            let ordering = ordering.ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{} has no 'order:' line; this class needs a vertex ordering",
                    path.display()
                ))
            })?;
            Ok((graph, ordering))
        }
        "ivg" if derive_from_intervals => {
            let rep = parse_ivg(&read_file(path)?)?.normalize();
            let ordering = ordering_from_proper_rep(&rep)?;
            Ok((intersection_graph(&rep), ordering))
        }
        other => Err(Error::InvalidInput(format!(
            "unsupported input extension '.{other}' for this class"
        ))),
    }
}

fn load_graph_any(path: &Path) -> Result<(UndirectedGraph, Option<VertexOrdering>), Error> {
    match extension(path) {
        "graph" => {
            let ParsedGraph { graph, ordering } = parse_graph(&read_file(path)?)?;
            Ok((graph, ordering))
        }
        "ivg" => {
            let rep = parse_ivg(&read_file(path)?)?.normalize();
            let ordering = ordering_from_proper_rep(&rep).ok();
            Ok((intersection_graph(&rep), ordering))
        }
        other => Err(Error::InvalidInput(format!(
            "unsupported input extension '.{other}'"
        ))),
    }
}

#[derive(Default)]
struct VerifyOutcomes {
    lines: Vec<(String, bool)>,
}

impl VerifyOutcomes {
    fn record(&mut self, what: &str, ok: bool) {
        self.lines.push((what.to_string(), ok));
    }

    fn all_ok(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }
}

fn verify_matching_output(g: &UndirectedGraph, m: &Matching) -> Result<VerifyOutcomes, Error> {
    let mut out = VerifyOutcomes::default();
    out.record(
        "pairwise-4cycle-free",
        find_alt_c4_pair(g, m.edges())?.is_none(),
    );
    if m.len() * 2 <= ORACLE_VERTEX_BOUND {
        out.record("uniqueness-oracle", is_ur_oracle(g, m.edges())?);
    }
    Ok(out)
}

fn matching_json(class: &str, m: &Matching, verify: Option<&VerifyOutcomes>) -> String {
    let edges: Vec<serde_json::Value> = m
        .edges()
        .iter()
        .map(|e| serde_json::json!([e.a(), e.b()]))
        .collect();
    let mut obj = serde_json::json!({
        "schema": "v1",
        "class": class,
        "size": m.len(),
        "edges": edges,
    });
    if let Some(v) = verify {
        obj["verify"] = serde_json::Value::Object(
            v.lines
                .iter()
                .map(|(k, ok)| (k.clone(), serde_json::Value::Bool(*ok)))
                .collect(),
        );
    }
    format!("{obj}\n")
}

fn cmd_solve(cli: &Cli, args: &SolveArgs) -> Result<i32, Error> {
    let (class, matching, graph): (&str, Matching, Option<UndirectedGraph>) = match args.class {
        SolveClass::ProperInterval => {
            let (g, ord) = load_ordered_instance(&args.input, true)?;
            let m = solve_proper(&g, &ord)?;
            (args.class.name(), m, Some(g))
        }
        SolveClass::BipPerm => {
            let (g, ord) = load_ordered_instance(&args.input, false)?;
            let m = solve_bipperm_with(&g, &ord, args.trust_ordering)?;
            (args.class.name(), m, Some(g))
        }
        SolveClass::Interval => {
            if extension(&args.input) != "ivg" {
                return Err(Error::InvalidInput(
                    "the interval class consumes a `.ivg` representation".into(),
                ));
            }
            let rep = parse_ivg(&read_file(&args.input)?)?;
            let m = solve_interval_urm(&rep, args.force)?;
            (
                args.class.name(),
                m,
                Some(intersection_graph(&rep.normalize())),
            )
        }
        SolveClass::NestSis => {
            if extension(&args.input) != "nest" {
                return Err(Error::InvalidInput(
                    "the nest-sis class consumes a `.nest` representation".into(),
                ));
            }
            let rep = parse_nest(&read_file(&args.input)?)?;
            let picked = max_sis(&rep);
            return solve_nest_output(cli, args, &rep, &picked);
        }
    };

    let g = graph.expect("matching classes carry their graph");
    let outcomes = if args.verify {
        let o = verify_matching_output(&g, &matching)?;
        assert!(o.all_ok(), "solver output failed re-verification");
        Some(o)
    } else {
        None
    };

    match cli.format {
        Format::Text => {
            let mut text = write_matching(&matching);
            if let Some(o) = &outcomes {
                for (what, ok) in &o.lines {
                    let _ = writeln!(
                        text,
                        "# verify {what}: {}",
                        if *ok { "ok" } else { "FAILED" }
                    );
                }
            }
            emit(cli, &text)?;
        }
        Format::Json => emit(cli, &matching_json(class, &matching, outcomes.as_ref()))?,
    }
    Ok(0)
}

fn solve_nest_output(
    cli: &Cli,
    args: &SolveArgs,
    rep: &NestRep,
    picked: &[u32],
) -> Result<i32, Error> {
    if args.verify {
        assert!(
            is_strong_independent(rep, picked),
            "solver output failed re-verification"
        );
    }
    match cli.format {
        Format::Text => {
            let mut text = format!("size {}\n", picked.len());
            for v in picked {
                let _ = writeln!(text, "{v}");
            }
            emit(cli, &text)?;
        }
        Format::Json => {
            let obj = serde_json::json!({
                "schema": "v1",
                "class": "nest-sis",
                "size": picked.len(),
                "vertices": picked,
            });
            emit(cli, &format!("{obj}\n"))?;
        }
    }
    Ok(0)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<i32, Error> {
    let (g, ordering) = load_graph_any(&args.graph)?;
    let edges = parse_matching(&read_file(&args.matching)?)?;
    if !is_matching(&g, &edges)? {
        return Err(Error::InvalidInput("edge set is not a matching".into()));
    }

    let (verified, witness): (bool, String) = match args.method {
        VerifyMethod::Oracle => {
            let ok = is_ur_oracle(&g, &edges)?;
            let witness = if !ok && g.n() <= CYCLE_ENUM_VERTEX_BOUND {
                match enumerate_alternating_cycles(&g, &edges, g.n())?.first() {
                    Some(c) => format!(
                        "alternating cycle: {}",
                        c.vertices()
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                    None => String::new(),
                }
            } else {
                String::new()
            };
            (ok, witness)
        }
        VerifyMethod::Pairwise => match find_alt_c4_pair(&g, &edges)? {
            None => (true, String::new()),
            Some((e, f)) => (false, format!("pair on a common 4-cycle: {e} and {f}")),
        },
        VerifyMethod::Consecutive => {
            let class = args
                .class
                .ok_or_else(|| Error::InvalidInput("--method consecutive needs --class".into()))?;
            let ord = ordering.ok_or_else(|| {
                Error::InvalidInput("consecutive verification needs a vertex ordering".into())
            })?;
            let check = match class {
                PairClass::ProperInterval => {
                    is_ur_consecutive(&g, &ord, &edges, |e, f| pair_is_ur_proper(&g, &ord, e, f))?
                }
                PairClass::BipPerm => {
                    is_ur_consecutive(&g, &ord, &edges, |e, f| pair_is_ur_bipperm(&g, &ord, e, f))?
                }
            };
            match check {
                ConsecutiveCheck::UniquelyRestricted => (true, String::new()),
                ConsecutiveCheck::FailsAt(e, f) => {
                    (false, format!("consecutive pair fails: {e} and {f}"))
                }
            }
        }
    };

    let method = match args.method {
        VerifyMethod::Oracle => "oracle",
        VerifyMethod::Pairwise => "pairwise",
        VerifyMethod::Consecutive => "consecutive",
    };
    match cli.format {
        Format::Text => {
            let mut text = format!(
                "method {method}: {}\n",
                if verified {
                    "uniquely restricted"
                } else {
                    "NOT uniquely restricted"
                }
            );
            if !witness.is_empty() {
                let _ = writeln!(text, "{witness}");
            }
            emit(cli, &text)?;
        }
        Format::Json => {
            let obj = serde_json::json!({
                "schema": "v1",
                "method": method,
                "uniquely_restricted": verified,
                "witness": witness,
            });
            emit(cli, &format!("{obj}\n"))?;
        }
    }
    Ok(if verified { 0 } else { 4 })
}

fn cmd_oracle(cli: &Cli, args: &OracleArgs) -> Result<i32, Error> {
    let (g, _) = load_graph_any(&args.input)?;
    let m = urm_core::verify::max_urm_bruteforce(&g)?;
    match cli.format {
        Format::Text => emit(cli, &write_matching(&m))?,
        Format::Json => emit(cli, &matching_json("oracle", &m, None))?,
    }
    Ok(0)
}

fn require(opt: Option<usize>, flag: &str, kind: &str) -> Result<usize, Error> {
    opt.ok_or_else(|| Error::InvalidInput(format!("--kind {kind} requires --{flag}")))
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<i32, Error> {
    match args.kind {
        GenKind::UnitIntervals => {
            let n = require(args.n, "n", "unit-intervals")?;
            let rep = gen_unit_intervals(n, cli.seed, args.span);
            emit(cli, &write_ivg(&rep))
        }
        GenKind::Intervals => {
            let n = require(args.n, "n", "intervals")?;
            let rep = gen_intervals(n, cli.seed, args.span);
            emit(cli, &write_ivg(&rep))
        }
        GenKind::BipPerm => {
            let p = require(args.p, "p", "bip-perm")?;
            let q = require(args.q, "q", "bip-perm")?;
            let (g, ord) = gen_bipperm(p, q, cli.seed);
            emit(cli, &write_graph(&g, Some(&ord)))
        }
        GenKind::Family => {
            let k = require(args.k, "k", "family")?;
            let fam = gen_family(k)?;
            let out = cli.out.as_ref().ok_or_else(|| {
                Error::InvalidInput("--kind family writes two files; --out is required".into())
            })?;
            let matching_path = args
                .matching_out
                .clone()
                .unwrap_or_else(|| out.with_extension("matching"));
            fs::write(out, write_graph(&fam.graph, None))
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", out.display())))?;
            fs::write(&matching_path, write_matching(&fam.matching)).map_err(|e| {
                Error::InvalidInput(format!("cannot write {}: {e}", matching_path.display()))
            })?;
            Ok(())
        }
    }?;
    Ok(0)
}

fn cmd_demo(cli: &Cli, args: &DemoArgs) -> Result<i32, Error> {
    if args.name != "fig1" {
        return Err(Error::InvalidInput(format!("unknown demo '{}'", args.name)));
    }
    let fx = fig1();
    let solved = solve_proper(&fx.graph, &fx.ordering)?;
    let baseline = consecutive_heuristic_baseline(&fx.graph, &fx.ordering)?;
    let fmt_edges = |m: &Matching| {
        m.edges()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "fig1: 7-vertex proper interval graph where consecutive-vertex edges are not enough"
    );
    let _ = writeln!(
        text,
        "chain solver:          size {} [{}]",
        solved.len(),
        fmt_edges(&solved)
    );
    let _ = writeln!(
        text,
        "consecutive baseline:  size {} [{}]",
        baseline.len(),
        fmt_edges(&baseline)
    );
    let _ = writeln!(
        text,
        "best possible with consecutive-vertex edges only is {}; the maximum is {}",
        baseline.len(),
        fx.max_urm_size
    );
    emit(cli, &text)?;
    Ok(0)
}

struct BenchRow {
    index: usize,
    n: usize,
    m: usize,
    size: usize,
    millis: f64,
    verify: Option<bool>,
}

fn cmd_bench(cli: &Cli, args: &BenchArgs) -> Result<i32, Error> {
    let mut rows = Vec::new();
    for (index, &n) in args.sizes.iter().enumerate() {
        let seed = cli.seed.wrapping_add(index as u64);
        let row = bench_one(args.class, n, seed, index, args.verify)?;
        rows.push(row);
    }

    let mut text = String::new();
    match cli.format {
        Format::Text => {
            let _ = writeln!(text, "v1");
            for r in &rows {
                let _ = write!(
                    text,
                    "i={} class={} n={} m={} size={} time_ms={:.2}",
                    r.index,
                    args.class.name(),
                    r.n,
                    r.m,
                    r.size,
                    r.millis
                );
                if let Some(ok) = r.verify {
                    let _ = write!(text, " verify={}", if ok { "ok" } else { "FAILED" });
                }
                let _ = writeln!(text);
            }
        }
        Format::Json => {
            let _ = writeln!(text, "{}", serde_json::json!({ "schema": "v1" }));
            for r in &rows {
                let mut obj = serde_json::json!({
                    "i": r.index,
                    "class": args.class.name(),
                    "n": r.n,
                    "m": r.m,
                    "size": r.size,
                    "time_ms": r.millis,
                });
                if let Some(ok) = r.verify {
                    obj["verify"] = serde_json::Value::Bool(ok);
                }
                let _ = writeln!(text, "{obj}");
            }
        }
    }
    emit(cli, &text)?;
    Ok(0)
}

fn bench_one(
    class: SolveClass,
    n: usize,
    seed: u64,
    index: usize,
    verify: bool,
) -> Result<BenchRow, Error> {
    match class {
        SolveClass::ProperInterval => {
            // Fixed interval length and span proportional to n keep the
            // expected degree constant across sizes.
            let rep = gen_unit_intervals_with_length(n.max(1), seed, 256 * n.max(1) as i64, 1024);
            let g = intersection_graph(&rep);
            let ord = ordering_from_proper_rep(&rep)?;
            let start = Instant::now();
            let m = solve_proper(&g, &ord)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let v = verify_for_bench(verify, &g, &m)?;
            Ok(BenchRow {
                index,
                n,
                m: g.m(),
                size: m.len(),
                millis,
                verify: v,
            })
        }
        SolveClass::BipPerm => {
            let p = (n / 2).max(1);
            let q = (n - p).max(1);
            let (g, ord) = gen_bipperm(p, q, seed);
            let start = Instant::now();
            let m = solve_bipperm_with(&g, &ord, true)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let v = verify_for_bench(verify, &g, &m)?;
            Ok(BenchRow {
                index,
                n: g.n(),
                m: g.m(),
                size: m.len(),
                millis,
                verify: v,
            })
        }
        SolveClass::Interval => {
            let rep = gen_intervals(n.max(1), seed, 3 * n.max(1) as i64);
            let g = intersection_graph(&rep.normalize());
            let start = Instant::now();
            let m = solve_interval_urm(&rep, false)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let v = verify_for_bench(verify, &g, &m)?;
            Ok(BenchRow {
                index,
                n: g.n(),
                m: g.m(),
                size: m.len(),
                millis,
                verify: v,
            })
        }
        SolveClass::NestSis => {
            let rep = gen_nest(n, seed, 4 * n.max(1) as i64);
            let start = Instant::now();
            let picked = max_sis(&rep);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let v = verify.then(|| is_strong_independent(&rep, &picked));
            let arcs = (0..n as u32)
                .flat_map(|u| (0..n as u32).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && rep.arc(u, v))
                .count();
            Ok(BenchRow {
                index,
                n,
                m: arcs,
                size: picked.len(),
                millis,
                verify: v,
            })
        }
    }
}

fn verify_for_bench(
    verify: bool,
    g: &UndirectedGraph,
    m: &Matching,
) -> Result<Option<bool>, Error> {
    if !verify {
        return Ok(None);
    }
    let outcomes = verify_matching_output(g, m)?;
    Ok(Some(outcomes.all_ok()))
}
