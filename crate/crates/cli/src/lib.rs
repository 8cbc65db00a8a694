//! Argument parsing and subcommand dispatch for the `ugs-pursuit` binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ugs_pursuit::analysis::{self, linear_grid};
use ugs_pursuit::information::realizable_sets;
use ugs_pursuit::network::{
    validate_network, MetricSpec, NetworkError, NetworkSpec, PathOrder, PursuerMetric, RoadNetwork,
    DEFAULT_PATH_CAP,
};
use ugs_pursuit::random::{layered_network, layered_speed, LayeredConfig};
use ugs_pursuit::simulator::{simulate, verify_guarantee, Outcome, SimOutcome};
use ugs_pursuit::solver::{solve, Resolution, SolveOptions, SolveResult};
use ugs_pursuit::tree::build_tree;
use ugs_pursuit::{Instance, NodeId};

/// Exit status for malformed input: bad files, invalid networks or metrics.
pub const EXIT_INVALID: u8 = 2;
/// Exit status for `solve --require-positive` when no delay is tolerable.
pub const EXIT_NO_GUARANTEE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ugs-pursuit", version, about = "Guaranteed-capture pursuit on sensor-watched road networks")]
pub struct Cli {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Network description (JSON).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "seed")]
    pub network: Option<PathBuf>,
    /// Generate a random layered network from this seed instead.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Euclidean pursuer metric at this speed (needs node coordinates).
    #[arg(long, global = true, value_name = "V", conflicts_with = "metric")]
    pub speed: Option<f64>,
    /// Pursuer metric file (JSON, "euclidean" or "table").
    #[arg(long, global = true, value_name = "FILE")]
    pub metric: Option<PathBuf>,
    /// Solve every subset of paths instead of only the realizable ones.
    #[arg(long, global = true)]
    pub no_prune: bool,
    /// Resolve red readings per delay and trust green only after the last one.
    #[arg(long, global = true)]
    pub strict_resolution: bool,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Number paths lexicographically by node sequence instead of by edge
    /// declaration order.
    #[arg(long, global = true)]
    pub lexicographic: bool,
    /// Refuse networks with more evader paths than this.
    #[arg(long, global = true, default_value_t = DEFAULT_PATH_CAP, value_name = "N")]
    pub max_paths: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate evader paths and their visit schedule.
    Paths,
    /// Realizable uncertainty sets with the chronological event log.
    Realizable,
    /// Latest exit times and the pursuit policy.
    Solve {
        /// Exit with status 3 unless some positive delay is tolerable.
        #[arg(long)]
        require_positive: bool,
    },
    /// The decision tree induced by the policy.
    Tree,
    /// Play the policy against one evader path.
    Simulate {
        /// Evader path, 1-based.
        #[arg(long, value_name = "K")]
        path: usize,
        /// Pursuer arrival time at the entry node.
        #[arg(long, value_name = "T")]
        t0: f64,
        /// Use a policy saved by `solve --format json` instead of solving.
        #[arg(long, value_name = "FILE")]
        policy: Option<PathBuf>,
    },
    /// Play the policy against every evader path.
    Verify {
        /// Pursuer arrival time at the entry node.
        #[arg(long, value_name = "T")]
        t0: f64,
        #[arg(long, value_name = "FILE")]
        policy: Option<PathBuf>,
    },
    /// Slowest pursuer speed with a positive tolerable delay.
    CriticalSpeed {
        /// Lower end of the bracket; must leave no positive delay.
        #[arg(long)]
        lo: f64,
        /// Upper end; must leave a positive delay.
        #[arg(long)]
        hi: f64,
        /// Width at which bisection stops.
        #[arg(long, default_value_t = analysis::DEFAULT_SPEED_TOL)]
        tol: f64,
    },
    /// Tolerable delay over a grid of pursuer speeds.
    Sweep {
        /// Comma-separated speeds, or `lo:hi:count`.
        #[arg(long)]
        grid: String,
    },
}

/// Input the user got wrong; maps to exit status 2.
#[derive(Debug)]
pub struct Invalid(pub String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

/// Parses `argv`, runs the subcommand and writes its report to stdout.
pub fn main_with(argv: impl IntoIterator<Item = String>) -> ExitCode {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_invalid(&e) {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn is_invalid(e: &anyhow::Error) -> bool {
    e.chain().any(|c| c.is::<Invalid>() || c.is::<NetworkError>())
}

/// Runs a parsed command; returns the report and the exit status.
pub fn run(cli: &Cli) -> Result<(String, u8)> {
    let input = &cli.input;
    let options = SolveOptions {
        resolution: if input.strict_resolution {
            Resolution::Strict
        } else {
            Resolution::Eager
        },
        prune: !input.no_prune,
    };
    match &cli.command {
        Command::Paths => Ok((paths_report(&instance(input, false)?, format(input, Format::Text)), 0)),
        Command::Realizable => Ok((realizable_report(&instance(input, false)?, format(input, Format::Text))?, 0)),
        Command::Solve { require_positive } => {
            let inst = instance(input, true)?;
            let result = solve(&inst, None, options)?;
            let out = solve_report(&result, format(input, Format::Text))?;
            let code = if *require_positive && result.root_latest() <= 0.0 {
                EXIT_NO_GUARANTEE
            } else {
                0
            };
            Ok((out, code))
        }
        Command::Tree => {
            let inst = instance(input, true)?;
            let result = solve(&inst, None, options)?;
            let tree = build_tree(&result, &inst)?;
            let out = match format(input, Format::Dot) {
                Format::Dot => tree.to_dot(),
                Format::Json => pretty(&tree.to_json()),
                f => return Err(invalid(format!("tree supports dot or json, not {f:?}"))),
            };
            Ok((out, 0))
        }
        Command::Simulate { path, t0, policy } => {
            let inst = instance(input, true)?;
            let result = policy_for(&inst, policy.as_deref(), options)?;
            if *path == 0 || *path > inst.path_count() {
                return Err(invalid(format!("--path must be in 1..={}", inst.path_count())));
            }
            let out = simulate(&inst, &result, *path, *t0).map_err(sim_error)?;
            Ok((simulate_report(&out, format(input, Format::Text))?, 0))
        }
        Command::Verify { t0, policy } => {
            let inst = instance(input, true)?;
            let result = policy_for(&inst, policy.as_deref(), options)?;
            let report = verify_guarantee(&inst, &result, *t0).map_err(sim_error)?;
            let out = match format(input, Format::Text) {
                Format::Json => pretty(&json!({
                    "t0": report.t0,
                    "all_captured": report.all_captured,
                    "paths": report.outcomes.iter().map(|o| json!({"path": o.path, "result": o.outcome})).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut s = String::new();
                    for o in &report.outcomes {
                        let _ = writeln!(s, "path {}: {}", o.path, describe(&o.outcome));
                    }
                    let verdict = if report.all_captured { "captured on every path" } else { "evader can escape" };
                    let _ = writeln!(s, "t0 = {}: {verdict}", report.t0);
                    s
                }
                f => return Err(invalid(format!("verify supports json or text, not {f:?}"))),
            };
            Ok((out, 0))
        }
        Command::CriticalSpeed { lo, hi, tol } => {
            let inst = instance(input, false)?;
            let v = analysis::critical_speed(&inst, *lo, *hi, *tol, options).map_err(|e| match e {
                analysis::AnalysisError::BracketInvalid { .. } => invalid(e.to_string()),
                e => e.into(),
            })?;
            let out = match format(input, Format::Text) {
                Format::Json => pretty(&json!({ "critical_speed": v, "tol": tol })),
                Format::Text => format!("critical speed: {v:.6}\n"),
                f => return Err(invalid(format!("critical-speed supports json or text, not {f:?}"))),
            };
            Ok((out, 0))
        }
        Command::Sweep { grid } => {
            let inst = instance(input, false)?;
            let speeds = parse_grid(grid)?;
            let s = analysis::sweep(&inst, &speeds, options)?;
            let out = match format(input, Format::Csv) {
                Format::Csv => s.to_csv(),
                Format::Json => pretty(&json!(s
                    .rows
                    .iter()
                    .map(|r| json!({"V": r.speed, "D": r.latest, "delay": r.delay(), "mu": r.first_move.map(|u| u.0)}))
                    .collect::<Vec<_>>())),
                Format::Text => {
                    let mut out = String::new();
                    for r in &s.rows {
                        match (r.latest, r.first_move) {
                            (Some(d), mu) => {
                                let mu = mu.map(|u| u.to_string()).unwrap_or_else(|| "-".into());
                                let _ = writeln!(out, "V = {:<10} D = {d:<12.6} move {mu}", r.speed);
                            }
                            _ => {
                                let _ = writeln!(out, "V = {:<10} too slow for this network", r.speed);
                            }
                        }
                    }
                    out
                }
                f => return Err(invalid(format!("sweep supports csv, json or text, not {f:?}"))),
            };
            Ok((out, 0))
        }
    }
}

fn format(input: &InputArgs, default: Format) -> Format {
    input.format.unwrap_or(default)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes") + "\n"
}

fn sim_error(e: ugs_pursuit::simulator::SimError) -> anyhow::Error {
    use ugs_pursuit::simulator::SimError;
    match e {
        SimError::InvalidDelay(_) | SimError::UnknownPath { .. } | SimError::ShapeMismatch { .. } => {
            invalid(e.to_string())
        }
        e => e.into(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn network(input: &InputArgs) -> Result<RoadNetwork> {
    match (&input.network, input.seed) {
        (Some(path), _) => {
            let spec: NetworkSpec = read_json(path)?;
            validate_network(&spec).with_context(|| format!("{}", path.display()))
        }
        (None, Some(seed)) => Ok(layered_network(seed, &LayeredConfig::default())),
        (None, None) => Err(invalid("give a network with --network FILE or --seed N")),
    }
}

/// Builds the instance. Without `need_metric` (or when no metric was given
/// for a command that sweeps speeds itself) a zero metric stands in.
fn instance(input: &InputArgs, need_metric: bool) -> Result<Instance> {
    let g = network(input)?;
    let metric = match (input.speed, &input.metric) {
        (Some(v), _) => MetricSpec::Euclidean { speed: v }.build(&g)?,
        (None, Some(path)) => {
            let spec: MetricSpec = read_json(path)?;
            spec.build(&g).with_context(|| format!("{}", path.display()))?
        }
        (None, None) if input.seed.is_some() && need_metric => {
            MetricSpec::Euclidean {
                speed: layered_speed(&g, &LayeredConfig::default()),
            }
            .build(&g)?
        }
        (None, None) if need_metric => return Err(invalid("give a pursuer metric with --speed V or --metric FILE")),
        (None, None) => PursuerMetric::zero(g.node_count()),
    };
    let order = if input.lexicographic {
        PathOrder::Lexicographic
    } else {
        PathOrder::Declared
    };
    Ok(Instance::with_options(g, metric, order, input.max_paths)?)
}

fn policy_for(inst: &Instance, policy: Option<&Path>, options: SolveOptions) -> Result<SolveResult> {
    match policy {
        Some(path) => {
            let value: serde_json::Value = read_json(path)?;
            SolveResult::from_json(&value).map_err(|e| invalid(format!("{}: {e}", path.display())))
        }
        None => {
            // Policies are replayed on every reachable set, so solve them all.
            let full = SolveOptions { prune: false, ..options };
            Ok(solve(inst, None, if inst.path_count() <= 20 { full } else { options })?)
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || invalid(format!("cannot read grid {text:?}; use v1,v2,... or lo:hi:count"));
    if let [lo, hi, n] = text.split(':').collect::<Vec<_>>()[..] {
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        return Ok(linear_grid(lo, hi, n));
    }
    let grid: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("grid speeds must be strictly ascending"));
    }
    Ok(grid)
}

fn fmt_time(t: f64) -> String {
    if t.is_finite() {
        format!("{t:.2}")
    } else {
        "-".into()
    }
}

fn paths_report(inst: &Instance, f: Format) -> String {
    match f {
        Format::Json => {
            let nodes = inst.node_count();
            let schedule: Vec<Vec<Option<f64>>> = (1..=nodes)
                .map(|j| {
                    inst.schedule
                        .row(NodeId(j))
                        .iter()
                        .map(|t| t.is_finite().then_some(*t))
                        .collect()
                })
                .collect();
            pretty(&json!({
                "paths": inst.paths.iter().map(|p| json!({
                    "index": p.index,
                    "nodes": p.nodes,
                    "arrival": p.arrival,
                    "length": p.length(),
                })).collect::<Vec<_>>(),
                "schedule": schedule,
            }))
        }
        Format::Csv => {
            let mut out = String::from("path,node,time\n");
            for p in &inst.paths {
                for (j, t) in p.nodes.iter().zip(&p.arrival) {
                    let _ = writeln!(out, "{},{},{}", p.index, j, t);
                }
            }
            out
        }
        _ => {
            let mut out = String::new();
            for p in &inst.paths {
                let route: Vec<String> = p.nodes.iter().map(|j| j.to_string()).collect();
                let _ = writeln!(out, "path {}: {}  length {:.2}", p.index, route.join(" -> "), p.length());
            }
            let _ = writeln!(out, "\nvisit times (node x path):");
            for j in inst.network.nodes() {
                let row: Vec<String> = inst.schedule.row(j).iter().map(|&t| format!("{:>7}", fmt_time(t))).collect();
                let _ = writeln!(out, "  {:>3} {}", j.0, row.join(" "));
            }
            out
        }
    }
}

fn realizable_report(inst: &Instance, f: Format) -> Result<String> {
    let fam = realizable_sets(&inst.schedule);
    Ok(match f {
        Format::Json => pretty(&fam.to_json()),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:<14} sets", "(node, time)");
            for row in &fam.log {
                let sets: Vec<String> = row.sets.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(out, "{:<14} {}", format!("({}, {:.2})", row.node, row.time), sets.join(", "));
            }
            let sets: Vec<String> = fam.sorted().iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "\n{} realizable sets: {}", fam.len(), sets.join(", "));
            out
        }
        f => return Err(invalid(format!("realizable supports json or text, not {f:?}"))),
    })
}

fn solve_report(result: &SolveResult, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => pretty(&result.to_json()),
        Format::Csv => {
            let mut out = String::from("node,set,D,mu,capture\n");
            for e in result.to_json()["entries"].as_array().expect("entries") {
                let set: Vec<String> = e["set"]
                    .as_array()
                    .expect("set")
                    .iter()
                    .map(|k| k.to_string())
                    .collect();
                let d = e["D"].as_f64().map(|d| d.to_string()).unwrap_or_default();
                let mu = e["mu"].as_u64().map(|u| u.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},\"{}\",{d},{mu},{}", e["node"], set.join(" "), e["capture"]);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let root = result.initial_set();
            let _ = writeln!(
                out,
                "{} paths, {} nodes, {:?} resolution, {} sets solved{}",
                result.paths,
                result.nodes,
                result.options.resolution,
                result.order.len(),
                if result.options.prune {
                    format!(" ({} outside the realizable family)", result.on_demand.len())
                } else {
                    " (full lattice)".into()
                }
            );
            let raw = result.root_latest();
            let _ = writeln!(out, "D(1|{root}) = {}", if raw.is_finite() { format!("{raw:.4}") } else { "no guarantee".into() });
            if let Some(u) = result.root_move() {
                let _ = writeln!(out, "first move: {u}");
            }
            let _ = writeln!(out, "tolerable delay: {:.4}", result.tolerable_delay());
            out
        }
        f => return Err(invalid(format!("solve supports json, csv or text, not {f:?}"))),
    })
}

fn describe(o: &Outcome) -> String {
    match o {
        Outcome::Captured { time, node } => format!("captured at node {node}, time {time:.4}"),
        Outcome::Escaped { time, node } => format!("escaped through node {node} at time {time:.4}"),
    }
}

fn simulate_report(out: &SimOutcome, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => {
            let mut s = out.transcript_json_lines();
            s.push_str(&serde_json::to_string(&out.outcome).expect("outcome serializes"));
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &out.transcript {
                let obs = match r.obs {
                    ugs_pursuit::information::Observation::Green => "green".to_string(),
                    ugs_pursuit::information::Observation::Red(d) => format!("red, passed {d:.4} ago"),
                };
                let _ = writeln!(s, "t = {:>9.4}  node {:>3}  {obs:<24} paths {}", r.t, r.node, r.set);
            }
            let _ = writeln!(s, "{}", describe(&out.outcome));
            s
        }
        f => return Err(invalid(format!("simulate supports json or text, not {f:?}"))),
    })
}
