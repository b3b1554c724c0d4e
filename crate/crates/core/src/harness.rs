//! Command-line surface: argument parsing, batch runs and report files.
//!
//! Every JSON file is an [`Envelope`]: a versioned `payload` that is fully
//! determined by the flags, next to a `metadata` block (timestamp, argv) that
//! is excluded from reproducibility comparisons.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{meets_sqrt_edge_bound, sqrt_edge_threshold, Rational};
use crate::constructions::{
    blowup_cycle, gka_minimal, saturate, turan_bipartite, verify_membership, GkaParams, SaturationPolicy,
};
use crate::cycles::{is_cycle_free, maximality_violation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::oracles::{
    conjecture_scan, max_classwise_complete_bipartite, max_edges_cycle_free_with_limit, max_induced_complete_bipartite,
    Sample, EXTREMAL_ORDER_LIMIT,
};
use crate::stability::{decompose, Outcome, StabilityReport};

pub const REPORT_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const IO: i32 = 4;
    pub const PARAMETERS: i32 = 5;
    /// Extraction met a non-edge with no path through the peeled set.
    pub const STUCK: i32 = 6;
    /// The peeled core is not bipartite.
    pub const NOT_BIPARTITE: i32 = 7;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => exit::BUDGET,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) | Error::Graph6 { .. } => exit::IO,
        Error::ContainsCycle(_) => exit::PROPERTY,
        Error::Parameters(_)
        | Error::Precondition(_)
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(_)
        | Error::Overlap(_)
        | Error::Uncovered(_)
        | Error::AlreadyEdge(..) => exit::PARAMETERS,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub unix_time: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub report_version: u32,
    pub metadata: Metadata,
    pub payload: &'a T,
}

/// The flag-determined part of a report, as written inside the envelope.
pub fn payload_json<T: Serialize>(payload: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(payload)?)
}

fn metadata(command: &[String]) -> Metadata {
    Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_vec(),
        unix_time: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    }
}

pub fn write_json<T: Serialize>(path: &Path, payload: &T, command: &[String]) -> Result<()> {
    let env = Envelope {
        report_version: REPORT_VERSION,
        metadata: metadata(command),
        payload,
    };
    fs::write(path, serde_json::to_string_pretty(&env)? + "\n")?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    let mut graphs = graph6::decode_lines(&text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().expect("one graph")),
        count => Err(Error::Parameters(format!(
            "{} holds {count} graphs, expected one",
            path.display()
        ))),
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    fs::write(path, graph6::encode(g) + "\n")?;
    Ok(())
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_stem().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

#[derive(Parser, Debug)]
#[command(
    name = "c2k1",
    version,
    about = "Constructions and verification for maximal C_{2k+1}-free graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and write it as graph6 with a JSON sidecar.
    Construct(ConstructArgs),
    /// Saturate a C_len-free graph to a maximal one.
    Saturate(SaturateArgs),
    /// Run the peel / 2-colour / extract pipeline and write a report.
    Decompose(DecomposeArgs),
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Construct, saturate and check every point of a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gka,
    Turan,
    Blowup,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Exact fraction such as 1/4.
    #[arg(long)]
    pub alpha: Option<Rational>,
    /// Blowup class sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// graph6 output; the sidecar goes next to it as `<stem>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolicyArg {
    Lex,
    Random,
}

#[derive(Args, Debug)]
pub struct SaturateArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Forbidden cycle length; defaults to 2k + 1.
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, value_enum, default_value = "lex")]
    pub policy: PolicyArg,
    #[arg(long)]
    pub seed: Option<u64>,
    /// graph6 output; the trace goes to `<stem>.trace.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub out_json: PathBuf,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Exact ex(n, C_len) with its extremal graphs.
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = EXTREMAL_ORDER_LIMIT)]
        max_order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare sampled graphs with blowups of C_{2k+3}.
    Conjecture {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "exhaustive")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Maximum induced complete bipartite subgraph of a small graph.
    Induced {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classwise maximum on the minimal G_{k,α}(n) member.
    Classwise {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<Rational>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub out_csv: PathBuf,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let command: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARAMETERS } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command, &command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(command: Command, argv: &[String]) -> Result<i32> {
    match command {
        Command::Construct(a) => cmd_construct(&a, argv),
        Command::Saturate(a) => cmd_saturate(&a, argv),
        Command::Decompose(a) => cmd_decompose(&a, argv),
        Command::Oracle(o) => cmd_oracle(o, argv),
        Command::Verify(a) => cmd_verify(&a, argv),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| Error::Parameters(format!("--{flag} is required for family {family}")))
}

#[derive(Serialize)]
struct ConstructSidecar<'a> {
    family: Family,
    n: usize,
    edges: usize,
    graph6_file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<GkaParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    layout: Option<&'a crate::constructions::GkaLayout>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sizes: Option<&'a [usize]>,
}

pub fn cmd_construct(a: &ConstructArgs, argv: &[String]) -> Result<i32> {
    let (g, params, layout) = match a.family {
        Family::Gka => {
            let p = GkaParams::new(
                need(a.k, "k", "gka")?,
                need(a.alpha, "alpha", "gka")?,
                need(a.n, "n", "gka")?,
            )?;
            let (g, layout) = gka_minimal(&p)?;
            (g, Some(p), Some(layout))
        }
        Family::Turan => (turan_bipartite(need(a.n, "n", "turan")?), None, None),
        Family::Blowup => (blowup_cycle(a.sizes.len(), &a.sizes)?, None, None),
    };
    write_graph(&a.out, &g)?;
    let side = ConstructSidecar {
        family: a.family,
        n: g.order(),
        edges: g.edge_count(),
        graph6_file: a.out.display().to_string(),
        params,
        layout: layout.as_ref(),
        sizes: matches!(a.family, Family::Blowup).then_some(a.sizes.as_slice()),
    };
    write_json(&sidecar(&a.out, ".json"), &side, argv)?;
    println!("wrote {} (n={}, e={})", a.out.display(), g.order(), g.edge_count());
    Ok(exit::OK)
}

fn cycle_len(len: Option<usize>, k: Option<u64>) -> Result<usize> {
    match (len, k) {
        (Some(l), None) => Ok(l),
        (None, Some(k)) => Ok(2 * k as usize + 1),
        (Some(l), Some(k)) if l == 2 * k as usize + 1 => Ok(l),
        (Some(l), Some(k)) => Err(Error::Parameters(format!("--len {l} disagrees with --k {k}"))),
        (None, None) => Err(Error::Parameters("one of --len or --k is required".into())),
    }
}

pub fn cmd_saturate(a: &SaturateArgs, argv: &[String]) -> Result<i32> {
    let len = cycle_len(a.len, a.k)?;
    let policy = match (a.policy, a.seed) {
        (PolicyArg::Lex, _) => SaturationPolicy::Lexicographic,
        (PolicyArg::Random, Some(seed)) => SaturationPolicy::Random { seed },
        (PolicyArg::Random, None) => return Err(Error::Parameters("--policy random requires --seed".into())),
    };
    let g = read_graph(&a.input)?;
    let (out, trace) = match saturate(&g, len, policy) {
        Ok(r) => r,
        Err(Error::ContainsCycle(c)) => {
            eprintln!("input contains C{len}: {:?}", c.vertices);
            return Ok(exit::PROPERTY);
        }
        Err(e) => return Err(e),
    };
    write_graph(&a.out, &out)?;
    write_json(&sidecar(&a.out, ".trace.json"), &trace, argv)?;
    println!(
        "saturated n={} e={} -> {} (+{} edges, {} passes)",
        g.order(),
        g.edge_count(),
        out.edge_count(),
        trace.added.len(),
        trace.passes
    );
    Ok(exit::OK)
}

pub fn decompose_exit(report: &StabilityReport) -> i32 {
    match report.outcome {
        Outcome::Verified if report.final_verified => exit::OK,
        Outcome::Verified => exit::PROPERTY,
        Outcome::Stuck { .. } => exit::STUCK,
        Outcome::SurvivorNotBipartite { .. } => exit::NOT_BIPARTITE,
    }
}

pub fn write_report_csv(path: &Path, reports: &[StabilityReport]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(StabilityReport::CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_decompose(a: &DecomposeArgs, argv: &[String]) -> Result<i32> {
    let g = read_graph(&a.input)?;
    let report = match decompose(&g, a.k) {
        Ok(r) => r,
        Err(Error::ContainsCycle(c)) => {
            eprintln!("input contains C{}: {:?}", 2 * a.k + 1, c.vertices);
            return Ok(exit::PROPERTY);
        }
        Err(e) => return Err(e),
    };
    write_json(&a.out_json, &report, argv)?;
    if let Some(csv) = &a.out_csv {
        write_report_csv(csv, std::slice::from_ref(&report))?;
    }
    println!(
        "n={} e={} |T|={} steps={} final={} outcome={}",
        report.n,
        report.edges,
        report.removed,
        report.extraction_steps,
        report.final_order,
        report.csv_row()[11]
    );
    Ok(decompose_exit(&report))
}

pub fn cmd_oracle(o: OracleCommand, argv: &[String]) -> Result<i32> {
    match o {
        OracleCommand::Ex { n, len, max_order, out } => {
            let r = max_edges_cycle_free_with_limit(n, len, max_order)?;
            write_json(&out, &r, argv)?;
            println!(
                "ex({n}, C{len}) = {} with {} witness(es)",
                r.max_edges,
                r.witnesses.len()
            );
            Ok(exit::OK)
        }
        OracleCommand::Conjecture {
            k,
            n,
            samples,
            seed,
            exhaustive,
            out,
            csv,
        } => {
            let sample = match (exhaustive, samples, seed) {
                (true, _, _) => Sample::Exhaustive,
                (false, Some(samples), Some(seed)) => Sample::Random { samples, seed },
                (false, Some(_), None) => return Err(Error::Parameters("--samples requires --seed".into())),
                (false, None, _) => {
                    return Err(Error::Parameters("give --samples with --seed, or --exhaustive".into()))
                }
            };
            let r = conjecture_scan(k, n, &sample)?;
            write_json(&out, &r, argv)?;
            if let Some(csv) = csv {
                let mut w = csv::Writer::from_path(csv)?;
                w.write_record([
                    "id",
                    "seed",
                    "graph6",
                    "edges",
                    "d2",
                    "bipartite",
                    "status",
                    "best_sizes",
                    "best_edges",
                    "best_d2",
                ])?;
                for rec in &r.records {
                    let best = rec.best.as_ref();
                    w.write_record([
                        rec.id.clone(),
                        rec.seed.map(|s| s.to_string()).unwrap_or_default(),
                        rec.graph6.clone(),
                        rec.edges.to_string(),
                        rec.d2.to_string(),
                        rec.bipartite.to_string(),
                        serde_json::to_value(rec.status)?
                            .as_str()
                            .unwrap_or_default()
                            .to_string(),
                        best.map(|b| b.sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                            .unwrap_or_default(),
                        best.map(|b| b.edges.to_string()).unwrap_or_default(),
                        best.map(|b| b.d2.to_string()).unwrap_or_default(),
                    ])?;
                }
                w.flush()?;
            }
            println!(
                "{} records, {} flagged, {} invariant failures",
                r.records.len(),
                r.flagged,
                r.invariant_failures.len()
            );
            for rec in r
                .records
                .iter()
                .filter(|r| r.status == crate::oracles::ScanStatus::NotDominated)
            {
                println!(
                    "FLAGGED {} seed={:?} {} e={} d2={}",
                    rec.id, rec.seed, rec.graph6, rec.edges, rec.d2
                );
            }
            Ok(if r.invariant_failures.is_empty() {
                exit::OK
            } else {
                exit::PROPERTY
            })
        }
        OracleCommand::Induced { input, out } => {
            let g = read_graph(&input)?;
            let (value, sides) = max_induced_complete_bipartite(&g)?;
            write_json(&out, &serde_json::json!({ "value": value, "sides": sides }), argv)?;
            println!("max induced complete bipartite: {value}");
            Ok(exit::OK)
        }
        OracleCommand::Classwise { k, alpha, n, out } => {
            let p = GkaParams::new(k, alpha, n)?;
            let (g, layout) = gka_minimal(&p)?;
            let r = max_classwise_complete_bipartite(&g, &layout)?;
            write_json(&out, &r, argv)?;
            println!(
                "classwise maximum: {} (left {:?}, right {:?})",
                r.value, r.left, r.right
            );
            Ok(exit::OK)
        }
    }
}

/// One row of the verification grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub k: u64,
    pub alpha: Rational,
    pub n: usize,
    pub feasible: bool,
    pub t: usize,
    pub minimal_edges: usize,
    pub minimal_free: bool,
    pub saturated_edges: usize,
    pub added: usize,
    pub saturated_free: bool,
    pub maximal: bool,
    /// Whether `n ≥ 36k/α`, the range where both bounds are guaranteed.
    pub bounds_apply: bool,
    pub edge_threshold: f64,
    pub edge_bound_holds: bool,
    pub size_threshold: Rational,
    pub classwise_value: usize,
    pub size_bound_holds: bool,
    pub clauses_after_saturation: String,
    pub pass: bool,
    /// Set when the point could not be evaluated.
    pub error: String,
}

pub fn verify_point(k: u64, alpha: Rational, n: usize) -> VerifyRow {
    let mut row = VerifyRow {
        k,
        alpha,
        n,
        feasible: false,
        t: 0,
        minimal_edges: 0,
        minimal_free: false,
        saturated_edges: 0,
        added: 0,
        saturated_free: false,
        maximal: false,
        bounds_apply: false,
        edge_threshold: 0.0,
        edge_bound_holds: false,
        size_threshold: Rational::integer(0),
        classwise_value: 0,
        size_bound_holds: false,
        clauses_after_saturation: String::new(),
        pass: false,
        error: String::new(),
    };
    if let Err(e) = verify_into(&mut row) {
        row.error = e.to_string();
        row.pass = false;
    }
    row
}

fn verify_into(row: &mut VerifyRow) -> Result<()> {
    let (k, alpha, n) = (row.k, row.alpha, row.n);
    let p = GkaParams::new(k, alpha, n)?;
    row.feasible = true;
    let len = p.cycle_len();
    let (g, layout) = gka_minimal(&p)?;
    row.t = layout.t;
    row.minimal_edges = g.edge_count();
    row.minimal_free = is_cycle_free(&g, len);
    let (sat, trace) = saturate(&g, len, SaturationPolicy::Lexicographic)?;
    row.saturated_edges = sat.edge_count();
    row.added = trace.added.len();
    row.saturated_free = is_cycle_free(&sat, len);
    row.maximal = maximality_violation(&sat, len).is_none();

    // n ≥ 36k/α  ⇔  α·n ≥ 36k
    row.bounds_apply = alpha * Rational::integer(n as i128) >= Rational::integer(36 * k as i128);
    row.edge_threshold = sqrt_edge_threshold(n as u64, k, alpha, 2).approx;
    row.edge_bound_holds = meets_sqrt_edge_bound(sat.edge_count() as u64, n as u64, k, alpha, 2);
    row.size_threshold = (Rational::integer(1) - alpha / Rational::integer(4)) * Rational::integer(n as i128);
    let classwise = max_classwise_complete_bipartite(&g, &layout)?;
    row.classwise_value = classwise.value;
    row.size_bound_holds = Rational::integer(classwise.value as i128) <= row.size_threshold;
    let membership = verify_membership(&sat, &layout, &p);
    row.clauses_after_saturation = membership
        .surviving()
        .iter()
        .map(|c| c.roman())
        .collect::<Vec<_>>()
        .join(" ");
    let bounds_ok = !row.bounds_apply || (row.edge_bound_holds && row.size_bound_holds);
    row.pass = row.minimal_free && row.saturated_free && row.maximal && bounds_ok;
    Ok(())
}

/// Evaluates every `(k, α, n)` combination concurrently; rows come back in input order.
pub fn verify_grid(ks: &[u64], alphas: &[Rational], ns: &[usize]) -> Result<Vec<VerifyRow>> {
    if ks.is_empty() || alphas.is_empty() || ns.is_empty() {
        return Err(Error::Parameters("every grid axis needs at least one value".into()));
    }
    let points: Vec<(u64, Rational, usize)> = ks
        .iter()
        .flat_map(|&k| alphas.iter().flat_map(move |&a| ns.iter().map(move |&n| (k, a, n))))
        .collect();
    Ok(points.into_par_iter().map(|(k, a, n)| verify_point(k, a, n)).collect())
}

pub fn write_verify_csv(path: &Path, rows: &[VerifyRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs, argv: &[String]) -> Result<i32> {
    let rows = verify_grid(&a.k, &a.alpha, &a.n)?;
    write_verify_csv(&a.out_csv, &rows)?;
    if let Some(json) = &a.out_json {
        write_json(json, &rows, argv)?;
    }
    for r in &rows {
        println!(
            "k={} alpha={} n={} e_sat={} maximal={} edge_bound={} classwise={}/{} {}",
            r.k,
            r.alpha,
            r.n,
            r.saturated_edges,
            r.maximal,
            r.edge_bound_holds,
            r.classwise_value,
            r.size_threshold,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(if rows.iter().any(|r| r.feasible && !r.pass) {
        exit::PROPERTY
    } else if rows.iter().any(|r| !r.feasible) {
        exit::PARAMETERS
    } else {
        exit::OK
    })
}
