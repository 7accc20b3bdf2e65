//! `pinning`: generate graphs, bound and select pin sets, sweep strategies
//! and simulate pinned networks.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use pinning_core::generators::GenSpec;
use pinning_core::strategies::{self, StrategyConfig, DEFAULT_BUDGET};
use pinning_core::sweep::{self, SweepConfig, SweepStrategy, BRUTE_FORCE_COLUMN_MAX_N};
use pinning_core::sync_sim::{self, Controller, NodeDynamics, SimConfig};
use pinning_core::{bound_report, parse_edge_list, write_edge_list, Graph, PinSet};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: io::Error,
    },
    #[error("{context}{source}")]
    Core {
        context: String,
        source: pinning_core::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Core { source, .. } => match source {
                pinning_core::Error::BudgetExceeded { .. } => 3,
                pinning_core::Error::InvalidParameter(_) => 1,
                _ => 2,
            },
        }
    }
}

impl From<pinning_core::Error> for CliError {
    fn from(source: pinning_core::Error) -> Self {
        CliError::Core {
            context: String::new(),
            source,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "pinning", version, about = "Pinning control analysis via the grounded Laplacian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Print lambda1 and every bound for a pin set as JSON.
    Analyze(AnalyzeArgs),
    /// Choose a pin set with one strategy and print it as JSON.
    Select(SelectArgs),
    /// Sweep a strategy over pin counts and write CSV.
    Sweep(SweepArgs),
    /// Integrate the pinned network; JSON summary on stdout.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Family {
    Star,
    DoubleStar,
    Complete,
    Path,
    Ba,
    Nw,
    ErdosRenyi,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Leaves per hub (double_star) or lattice degree (nw).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Shortcut (nw) or edge (erdos_renyi) probability.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PinArgs {
    /// Comma-separated 0-based node ids, e.g. 1,7.
    #[arg(long, value_delimiter = ',', conflicts_with = "pins_file")]
    pins: Vec<usize>,
    /// File of node ids separated by whitespace or commas; '#' starts a comment.
    #[arg(long)]
    pins_file: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    graph: PathBuf,
    #[command(flatten)]
    pins: PinArgs,
    #[arg(long)]
    alpha_over_c: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum StrategyArg {
    DegreeMix,
    Betweenness,
    Dominating,
    BruteForce,
    Greedy,
}

#[derive(Args)]
struct SelectArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    /// Pin count; ignored by dominating.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = strategies::DEFAULT_DEGREE_MIX_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args)]
struct SweepArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    /// Comma-separated q values (degree_mix only).
    #[arg(long, value_delimiter = ',', default_value = "1")]
    q: Vec<f64>,
    /// Inclusive pin-count range START..END.
    #[arg(long)]
    l_range: String,
    #[arg(long, default_value_t = 1)]
    step: usize,
    #[arg(long, default_value_t = strategies::DEFAULT_DEGREE_MIX_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Force the brute_force_max column on or off; default is on for small graphs.
    #[arg(long)]
    brute_force_column: Option<bool>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    graph: PathBuf,
    #[command(flatten)]
    pins: PinArgs,
    /// `linear:a=<growth>` or `chua` (optionally `chua:alpha=..,beta=..,m0=..,m1=..`).
    #[arg(long)]
    dynamics: String,
    /// `linear:d=<gain>` or `adaptive:h=<rate>`.
    #[arg(long)]
    controller: String,
    #[arg(long)]
    c: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 50.0)]
    t_end: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    record_every: usize,
    #[arg(long, default_value_t = 1e-6)]
    sync_tol: f64,
    /// Time series of error norms and gains.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    parse_edge_list(&read(path)?).map_err(|source| CliError::Core {
        context: format!("{}: ", path.display()),
        source,
    })
}

fn load_pins(args: &PinArgs, n: usize) -> CliResult<PinSet> {
    let ids = match &args.pins_file {
        Some(path) => {
            let text = read(path)?;
            let mut ids = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let body = line.split('#').next().unwrap_or("");
                for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                    if tok.is_empty() {
                        continue;
                    }
                    let id = tok.parse().map_err(|e| CliError::Core {
                        context: format!("{}: ", path.display()),
                        source: pinning_core::Error::Parse {
                            line: idx + 1,
                            message: format!("bad node id {tok:?}: {e}"),
                        },
                    })?;
                    ids.push(id);
                }
            }
            ids
        }
        None if args.pins.is_empty() => {
            return Err(CliError::Usage("give --pins or --pins-file".into()))
        }
        None => args.pins.clone(),
    };
    Ok(PinSet::new(ids, n)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family}")))
}

fn cmd_gen(args: GenArgs) -> CliResult<()> {
    let spec = match args.family {
        Family::Star => GenSpec::Star { n: need(args.n, "n", "star")? },
        Family::DoubleStar => GenSpec::DoubleStar { k: need(args.k, "k", "double_star")? },
        Family::Complete => GenSpec::Complete { n: need(args.n, "n", "complete")? },
        Family::Path => GenSpec::Path { n: need(args.n, "n", "path")? },
        Family::Ba => GenSpec::Ba {
            n: need(args.n, "n", "ba")?,
            m0: need(args.m0, "m0", "ba")?,
            m: need(args.m, "m", "ba")?,
            seed: args.seed,
        },
        Family::Nw => GenSpec::Nw {
            n: need(args.n, "n", "nw")?,
            k: need(args.k, "k", "nw")?,
            p: need(args.p, "p", "nw")?,
            seed: args.seed,
        },
        Family::ErdosRenyi => GenSpec::ErdosRenyi {
            n: need(args.n, "n", "erdos_renyi")?,
            p: need(args.p, "p", "erdos_renyi")?,
            seed: args.seed,
        },
    };
    let g = spec.generate()?;
    write_output(args.out.as_deref(), &write_edge_list(&g))
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let s = load_pins(&args.pins, g.node_count())?;
    let report = bound_report(&g, &s, args.alpha_over_c)?;
    write_output(None, &json(&report))
}

fn cmd_select(args: SelectArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let l = || args.l.ok_or_else(|| CliError::Usage("--l is required".into()));
    let result = match args.strategy {
        StrategyArg::DegreeMix => {
            let cfg = StrategyConfig::new(l()?, args.q, args.seed).with_runs(args.runs);
            strategies::select_degree_mix(&g, &cfg)?
        }
        StrategyArg::Betweenness => strategies::select_betweenness(&g, l()?)?,
        StrategyArg::Dominating => strategies::dominating_partition(&g, args.seed)?,
        StrategyArg::BruteForce => strategies::brute_force_with_budget(&g, l()?, args.budget)?,
        StrategyArg::Greedy => strategies::greedy_max_lambda1(&g, l()?)?,
    };
    write_output(None, &json(&result))
}

fn parse_l_range(text: &str, step: usize) -> CliResult<Vec<usize>> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Usage(format!("--l-range expects START..END, got {text:?}")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| CliError::Usage(format!("--l-range bound {s:?}: {e}")))
    };
    Ok(sweep::l_range(parse(a)?, parse(b)?, step)?)
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let ls = parse_l_range(&args.l_range, args.step)?;
    let strategy = match args.strategy {
        StrategyArg::DegreeMix => SweepStrategy::DegreeMix { qs: args.q.clone() },
        StrategyArg::Betweenness => SweepStrategy::Betweenness,
        StrategyArg::BruteForce => SweepStrategy::BruteForce,
        StrategyArg::Greedy => SweepStrategy::Greedy,
        StrategyArg::Dominating => {
            return Err(CliError::Usage(
                "dominating picks its own pin count; use `select`".into(),
            ))
        }
    };
    let runs = match strategy {
        SweepStrategy::DegreeMix { .. } => args.runs,
        _ => 1,
    };
    let cfg = SweepConfig {
        strategy,
        ls,
        runs,
        seed: args.seed,
        brute_force_column: args
            .brute_force_column
            .unwrap_or(g.node_count() <= BRUTE_FORCE_COLUMN_MAX_N),
        graph_label: args.graph.display().to_string(),
    };
    let result = sweep::run_sweep(&g, &cfg)?;
    write_output(args.out.as_deref(), &result.to_csv())
}

/// `name` or `name:key=value,key=value`.
fn parse_tagged(text: &str) -> CliResult<(&str, Vec<(&str, f64)>)> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let mut params = Vec::new();
    for part in rest.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got {part:?}")))?;
        let v = v
            .parse::<f64>()
            .map_err(|e| CliError::Usage(format!("{k}={v}: {e}")))?;
        params.push((k, v));
    }
    Ok((name, params))
}

fn take(params: &[(&str, f64)], key: &str, default: Option<f64>, what: &str) -> CliResult<f64> {
    if let Some((unknown, _)) = params.iter().find(|(k, _)| !is_known(what, k)) {
        return Err(CliError::Usage(format!("unknown parameter {unknown:?} for {what}")));
    }
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|p| p.1)
        .or(default)
        .ok_or_else(|| CliError::Usage(format!("{what} needs {key}=<value>")))
}

fn is_known(what: &str, key: &str) -> bool {
    match what {
        "linear dynamics" => key == "a",
        "chua" => matches!(key, "alpha" | "beta" | "m0" | "m1"),
        "linear controller" => key == "d",
        "adaptive controller" => key == "h",
        _ => false,
    }
}

fn parse_dynamics(text: &str) -> CliResult<NodeDynamics> {
    let (name, p) = parse_tagged(text)?;
    match name {
        "linear" => Ok(NodeDynamics::LinearUnstable {
            a: take(&p, "a", None, "linear dynamics")?,
        }),
        "chua" => {
            let NodeDynamics::Chua { alpha, beta, m0, m1 } = NodeDynamics::chua() else {
                unreachable!()
            };
            Ok(NodeDynamics::Chua {
                alpha: take(&p, "alpha", Some(alpha), "chua")?,
                beta: take(&p, "beta", Some(beta), "chua")?,
                m0: take(&p, "m0", Some(m0), "chua")?,
                m1: take(&p, "m1", Some(m1), "chua")?,
            })
        }
        other => Err(CliError::Usage(format!(
            "unknown dynamics {other:?}; expected linear:a=<value> or chua"
        ))),
    }
}

fn parse_controller(text: &str) -> CliResult<Controller> {
    let (name, p) = parse_tagged(text)?;
    match name {
        "linear" => Ok(Controller::Linear {
            d: take(&p, "d", None, "linear controller")?,
        }),
        "adaptive" => Ok(Controller::Adaptive {
            h: take(&p, "h", None, "adaptive controller")?,
        }),
        other => Err(CliError::Usage(format!(
            "unknown controller {other:?}; expected linear:d=<value> or adaptive:h=<value>"
        ))),
    }
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let dynamics = parse_dynamics(&args.dynamics)?;
    let controller = parse_controller(&args.controller)?;
    let g = load_graph(&args.graph)?;
    let s = load_pins(&args.pins, g.node_count())?;
    let mut cfg = SimConfig::new(controller, args.c);
    cfg.dt = args.dt;
    cfg.t_end = args.t_end;
    cfg.seed = args.seed;
    cfg.record_every = args.record_every;
    cfg.sync_tol = args.sync_tol;
    let result = sync_sim::simulate(&g, &s, dynamics, &cfg)?;
    if let Some(path) = &args.csv {
        write_output(Some(path), &result.to_csv())?;
    }
    write_output(None, &json(&result.summary()))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Select(a) => cmd_select(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
