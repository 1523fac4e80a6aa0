//! `motifgraph` command-line front end.
//!
//! Exit codes: 0 success, 1 property false (`check` only), 2 invalid input
//! or runtime error, 3 inconclusive (Hamiltonicity budget exhausted in most
//! trials).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motifgraph::covering::{
    fmt_rational, gamma_bar, gamma_bar_exhaustive, path_closed_form, Covering, Subject,
};
use motifgraph::harness::{
    appearance_experiment, curve_csv, default_p_grid, estimate_p_half, isolated_vertex_stats,
    load_motif, threshold_curve, CurveConfig, CurvePoint, ExperimentConfig, Grid, PHalfConfig,
    Property,
};
use motifgraph::hitting::{hitting_stats, reports_csv, HittingConfig, Targets};
use motifgraph::motif::{m_r, q_r, threshold_params, total_copies, ThresholdParams};
use motifgraph::properties::DEFAULT_BUDGET;
use motifgraph::sampler::{sample_binomial, sample_uniform};
use motifgraph::{Error, GraphRecord, Motif, MotifMultiGraph, SeededRng};
use serde::Serialize;

type AnyResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "motifgraph", version, about = "Random graphs built from motif copies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one graph from G(H, n, p) or G(H, n, m) and print it as JSON.
    Sample(SampleArgs),
    /// Run the random process and record hitting times.
    Process(Common),
    /// Empirical probability of a property along a p- or m-grid.
    Curve(Common),
    /// Bisect for the p at which a property holds with probability 1/2.
    Phalf(Common),
    /// Maximal covering density gamma_bar of a subject by a motif.
    Gamma(GammaArgs),
    /// Appearance of a subject in G(H, n, m) around n^(v - gamma_bar).
    Appear(Common),
    /// Exact copy counts and degree-threshold parameters.
    Formulas(FormulaArgs),
    /// Isolated-vertex counts at p = (ln n - ln ln n) / m_1.
    Iso(IsoArgs),
    /// Test a property of a saved graph (exit 0 true, 1 false, 3 inconclusive).
    Check(CheckArgs),
}

/// Flags shared by the experiment subcommands; each overrides `--config`.
#[derive(Args, Clone, Default)]
struct Common {
    /// JSON experiment config; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Motif preset (edge, triangle, path:k, cycle:k, clique:k, star:k) or edge-list file.
    #[arg(long)]
    motif: Option<String>,
    /// Subject graph for `appear`, same syntax as --motif.
    #[arg(long)]
    subject: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// connected, pm, ham, mindeg:d, contains:S or nonempty.
    #[arg(long)]
    property: Option<String>,
    /// Comma-separated probabilities.
    #[arg(long, value_delimiter = ',')]
    p_grid: Option<Vec<f64>>,
    /// Comma-separated copy counts.
    #[arg(long, value_delimiter = ',')]
    m_grid: Option<Vec<u64>>,
    /// Relative bracket width at which `phalf` stops.
    #[arg(long)]
    rtol: Option<f64>,
    /// Expansion budget for each Hamiltonicity search.
    #[arg(long)]
    ham_budget: Option<u64>,
    /// Hitting-time targets for `process`, e.g. conn,pm,ham.
    #[arg(long)]
    targets: Option<String>,
    /// JSON output path (stdout when absent).
    #[arg(long)]
    out: Option<String>,
    /// CSV output path.
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    motif: String,
    #[arg(long)]
    n: usize,
    /// Copy probability for the binomial model.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    p: Option<f64>,
    /// Number of distinct copies for the uniform model.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    seed: u64,
    /// Print `u v` lines of the simple graph instead of JSON.
    #[arg(long)]
    edges: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    subject: String,
    #[arg(long)]
    motif: String,
    /// Evaluate every covering instead of branch-and-bound.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long)]
    motif: String,
    #[arg(long)]
    n: usize,
    /// Report m_r and q_r for this r.
    #[arg(long)]
    r: Option<usize>,
    /// Degree for the threshold parameters.
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Override x(n) in the threshold parameters.
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct IsoArgs {
    #[arg(long)]
    motif: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Evaluate at this p instead of the default.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph JSON as written by `sample`.
    #[arg(long)]
    graph: PathBuf,
    /// Motif of the graph; may be omitted when the file records it.
    #[arg(long)]
    motif: Option<String>,
    #[arg(long)]
    property: String,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    ham_budget: u64,
}

const DEFAULT_TRIALS: usize = 100;
const DEFAULT_RTOL: f64 = 0.05;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> AnyResult<u8> {
    match cmd {
        Command::Sample(a) => sample(a),
        Command::Process(c) => process(resolve(c)?),
        Command::Curve(c) => curve(resolve(c)?),
        Command::Phalf(c) => phalf(resolve(c)?),
        Command::Gamma(a) => gamma(a),
        Command::Appear(c) => appear(resolve(c)?),
        Command::Formulas(a) => formulas(a),
        Command::Iso(a) => iso(a),
        Command::Check(a) => check(a),
    }
}

/// Merges command-line flags over the optional config file.
fn resolve(c: Common) -> AnyResult<ExperimentConfig> {
    let base = match &c.config {
        Some(path) => ExperimentConfig::from_json(&fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    let flags = ExperimentConfig {
        motif: c.motif,
        subject: c.subject,
        n: c.n,
        trials: c.trials,
        seed: c.seed,
        property: c.property,
        p_grid: c.p_grid,
        m_grid: c.m_grid,
        rtol: c.rtol,
        ham_budget: c.ham_budget,
        targets: c.targets,
        out: c.out,
        csv: c.csv,
    };
    let cfg = flags.or(base);
    cfg.validate()?;
    if cfg.seed.is_none() {
        return Err(invalid("--seed is required (flag or config file)"));
    }
    Ok(cfg)
}

fn invalid(msg: &str) -> Box<dyn std::error::Error> {
    Box::new(Error::InvalidConfig(msg.into()))
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> AnyResult<T> {
    v.clone().ok_or_else(|| invalid(&format!("missing {name}")))
}

fn emit_json<T: Serialize>(value: &T, out: Option<&str>) -> AnyResult<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    emit_text(&text, out)
}

fn emit_text(text: &str, out: Option<&str>) -> AnyResult<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Inconclusive when budget-limited trials outnumber conclusive ones.
fn budget_dominated(inconclusive: u64, conclusive: u64) -> bool {
    inconclusive > 0 && inconclusive >= conclusive
}

fn sample(a: SampleArgs) -> AnyResult<u8> {
    let motif = load_motif(&a.motif)?;
    let mut rng = SeededRng::new(a.seed, 0).rng();
    let g = match (a.p, a.m) {
        (Some(p), _) => sample_binomial(a.n, &motif, p, &mut rng)?,
        (None, Some(m)) => sample_uniform(a.n, &motif, m as u128, &mut rng)?,
        (None, None) => return Err(invalid("give --p or --m")),
    };
    if a.edges {
        emit_text(&g.edge_list_text(), a.out.as_deref())?;
    } else {
        emit_json(&g.to_record(Some(&motif)), a.out.as_deref())?;
    }
    Ok(0)
}

fn process(cfg: ExperimentConfig) -> AnyResult<u8> {
    let targets = match &cfg.targets {
        Some(t) => Targets::parse(t)?,
        None => Targets::all(),
    };
    let hc = HittingConfig {
        n: need(&cfg.n, "n")?,
        motif: load_motif(&need(&cfg.motif, "motif")?)?,
        trials: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        targets,
        seed: cfg.seed.unwrap(),
        ham_budget: cfg.ham_budget.unwrap_or(DEFAULT_BUDGET),
    };
    let out = hitting_stats(&hc)?;
    emit_json(&out, cfg.out.as_deref())?;
    if let Some(path) = &cfg.csv {
        fs::write(path, reports_csv(&out.reports))?;
    }
    let inc = out.summary.inconclusive as u64;
    Ok(if budget_dominated(inc, out.summary.trials as u64 - inc) { 3 } else { 0 })
}

#[derive(Serialize)]
struct CurveOutput {
    motif: String,
    n: usize,
    property: String,
    seed: u64,
    trials: usize,
    /// `x(n)` used by the default degree-threshold window.
    x_of_n: f64,
    grid: &'static str,
    points: Vec<CurvePoint>,
}

fn grid_of(cfg: &ExperimentConfig, n: usize, motif: &Motif) -> AnyResult<Grid> {
    Ok(match (&cfg.p_grid, &cfg.m_grid) {
        (Some(p), _) => Grid::P(p.clone()),
        (None, Some(m)) => Grid::M(m.clone()),
        (None, None) => Grid::P(default_p_grid(n, motif)?),
    })
}

fn curve(cfg: ExperimentConfig) -> AnyResult<u8> {
    let n = need(&cfg.n, "n")?;
    let motif = load_motif(&need(&cfg.motif, "motif")?)?;
    let property = Property::parse(&cfg.property.clone().unwrap_or_else(|| "connected".into()))?;
    let grid = grid_of(&cfg, n, &motif)?;
    let kind = if matches!(grid, Grid::P(_)) { "p" } else { "m" };
    let cc = CurveConfig {
        motif: motif.clone(),
        n,
        trials: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        seed: cfg.seed.unwrap(),
        property: property.clone(),
        grid,
        ham_budget: cfg.ham_budget.unwrap_or(DEFAULT_BUDGET),
    };
    let points = threshold_curve(&cc)?;
    if let Some(path) = &cfg.csv {
        fs::write(path, curve_csv(&points))?;
    }
    let inc: u64 = points.iter().map(|p| p.inconclusive).sum();
    let con: u64 = points.iter().map(|p| p.trials).sum();
    emit_json(
        &CurveOutput {
            motif: motif.label(),
            n,
            property: property.label(),
            seed: cc.seed,
            trials: cc.trials,
            x_of_n: ThresholdParams::default_x(n.max(3)),
            grid: kind,
            points,
        },
        cfg.out.as_deref(),
    )?;
    Ok(if budget_dominated(inc, con) { 3 } else { 0 })
}

fn phalf(cfg: ExperimentConfig) -> AnyResult<u8> {
    let pc = PHalfConfig {
        motif: load_motif(&need(&cfg.motif, "motif")?)?,
        n: need(&cfg.n, "n")?,
        trials: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        seed: cfg.seed.unwrap(),
        property: Property::parse(&cfg.property.clone().unwrap_or_else(|| "connected".into()))?,
        rtol: cfg.rtol.unwrap_or(DEFAULT_RTOL),
        ham_budget: cfg.ham_budget.unwrap_or(DEFAULT_BUDGET),
    };
    let r = estimate_p_half(&pc)?;
    if let Some(path) = &cfg.csv {
        fs::write(path, curve_csv(&r.evaluations))?;
    }
    emit_json(&r, cfg.out.as_deref())?;
    let inc: u64 = r.evaluations.iter().map(|p| p.inconclusive).sum();
    let con: u64 = r.evaluations.iter().map(|p| p.trials).sum();
    Ok(if budget_dominated(inc, con) { 3 } else { 0 })
}

#[derive(Serialize)]
struct ClosedFormOutput {
    exc: i64,
    beta: usize,
    eta: String,
    gamma_bar: String,
}

#[derive(Serialize)]
struct GammaOutput {
    subject: Vec<(usize, usize)>,
    motif: String,
    gamma_bar: String,
    exponent: String,
    coverings_seen: u64,
    witness: Covering,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<ClosedFormOutput>,
}

fn gamma(a: GammaArgs) -> AnyResult<u8> {
    let s = Subject::from_motif(&load_motif(&a.subject)?);
    let h = load_motif(&a.motif)?;
    let r = if a.exhaustive { gamma_bar_exhaustive(&s, &h)? } else { gamma_bar(&s, &h)? };
    let closed_form = if h.is_path() && s.is_connected() {
        let c = path_closed_form(&s, h.k())?;
        Some(ClosedFormOutput {
            exc: c.exc,
            beta: c.beta,
            eta: fmt_rational(&c.eta),
            gamma_bar: fmt_rational(&c.gamma_bar),
        })
    } else {
        None
    };
    emit_json(
        &GammaOutput {
            subject: s.edges().to_vec(),
            motif: h.label(),
            gamma_bar: fmt_rational(&r.gamma_bar),
            exponent: fmt_rational(&r.exponent),
            coverings_seen: r.coverings_seen,
            witness: r.witness,
            closed_form,
        },
        a.out.as_deref(),
    )?;
    Ok(0)
}

fn appear(cfg: ExperimentConfig) -> AnyResult<u8> {
    if cfg.p_grid.is_some() {
        return Err(invalid("appear takes an m-grid"));
    }
    let subject = load_motif(&need(&cfg.subject, "subject")?)?;
    let motif = load_motif(&need(&cfg.motif, "motif")?)?;
    let r = appearance_experiment(
        &subject,
        &motif,
        need(&cfg.n, "n")?,
        cfg.m_grid.clone(),
        cfg.trials.unwrap_or(DEFAULT_TRIALS),
        cfg.seed.unwrap(),
    )?;
    if let Some(path) = &cfg.csv {
        let points: Vec<CurvePoint> = r.points.iter().map(|p| p.point.clone()).collect();
        fs::write(path, curve_csv(&points))?;
    }
    emit_json(&r, cfg.out.as_deref())?;
    Ok(0)
}

#[derive(Serialize)]
struct FormulaOutput {
    motif: String,
    k: usize,
    edges: usize,
    aut: u64,
    n: usize,
    total_copies: String,
    m_1: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<ThresholdParams>,
}

fn formulas(a: FormulaArgs) -> AnyResult<u8> {
    let h = load_motif(&a.motif)?;
    let (m, q) = match a.r {
        Some(r) => (Some(m_r(a.n, &h, r)?.to_string()), Some(q_r(a.n, &h, r)?.to_string())),
        None => (None, None),
    };
    let threshold = if a.n >= 3 { Some(threshold_params(a.n, &h, a.d, a.x)?) } else { None };
    emit_json(
        &FormulaOutput {
            motif: h.label(),
            k: h.k(),
            edges: h.edge_count(),
            aut: h.aut(),
            n: a.n,
            total_copies: total_copies(a.n, &h).to_string(),
            m_1: m_r(a.n, &h, 1.min(a.n))?.to_string(),
            r: a.r,
            m_r: m,
            q_r: q,
            threshold,
        },
        a.out.as_deref(),
    )?;
    Ok(0)
}

fn iso(a: IsoArgs) -> AnyResult<u8> {
    let motif = load_motif(&a.motif)?;
    let s = isolated_vertex_stats(&motif, a.n, a.trials, a.seed, a.p)?;
    emit_json(&s, a.out.as_deref())?;
    Ok(0)
}

fn check(a: CheckArgs) -> AnyResult<u8> {
    let record: GraphRecord = serde_json::from_str(&fs::read_to_string(&a.graph)?)
        .map_err(|e| Error::Parse(e.to_string()))?;
    let motif = match (&a.motif, &record.motif) {
        (Some(spec), _) => load_motif(spec)?,
        (None, Some(edges)) => Motif::from_pairs(edges)?,
        (None, None) => return Err(invalid("graph file has no motif; pass --motif")),
    };
    let g = MotifMultiGraph::from_record(&record, &motif)?;
    let code = match Property::parse(&a.property)?.holds(&g, a.ham_budget)? {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    };
    println!("{}", match code {
        0 => "true",
        1 => "false",
        _ => "inconclusive",
    });
    Ok(code)
}
