//! Command implementations for the `localcc` binary.

pub mod report;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use localcc_core::agreements::format_trace;
use localcc_core::graph::{
    agreement_vector, disagreement_vector, evaluate_objective, BipartiteSides, Clustering, LocalObjective, Sign,
    SignedGraph,
};
use localcc_core::instances::{
    complete_bipartite_random, complete_random, gap_cycle, random_st_problem, try_random_signed, RandomSignedParams,
};
use localcc_core::io::{parse_cut_problem, parse_graph, write_clustering, write_cut_problem, write_graph};
use localcc_core::minmax::{solve_minmax_jobs, APPROX_FACTOR};
use localcc_core::oracle::{exact_max_local_agreements, exact_min_local_disagreements, exact_minmax_cut, OracleError};
use localcc_core::reductions::encode;
use localcc_core::relaxation::{solve_agreements_relaxation, solve_disagreement_relaxation, MetricSolution};
use localcc_core::{greedy_clustering_bipartite, greedy_clustering_complete, solve_maxmin_agreements};

use crate::report::{decimal4, RunReport};

/// Error carrying the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const PARSE: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const INTERNAL: u8 = 4;

    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: Self::PARSE, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: Self::PRECONDITION, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: Self::INTERNAL, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "localcc", version, about = "Correlation clustering with local objectives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and write a clustering plus a key=value report.
    Solve(SolveArgs),
    /// Exact brute-force optimum for small instances.
    Oracle(OracleArgs),
    /// Generate an instance.
    Gen(GenArgs),
    /// Encode a min-max cut problem as a signed graph.
    Convert(ConvertArgs),
    /// Print LP and integral values on the gap cycles.
    Gapdemo(GapdemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Layered clustering with c_max guessing (weighted graphs).
    MinmaxGeneral,
    /// Greedy ball rounding on complete graphs.
    LocalComplete,
    /// Greedy ball rounding on complete bipartite graphs.
    LocalBipartite,
    /// Non-oblivious local search for Max Min Agreements.
    MaxminAgree,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::MinmaxGeneral => "minmax-general",
            Algorithm::LocalComplete => "local-complete",
            Algorithm::LocalBipartite => "local-bipartite",
            Algorithm::MaxminAgree => "maxmin-agree",
        }
    }
}

fn parse_objective(s: &str) -> Result<LocalObjective, String> {
    s.parse::<LocalObjective>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub algorithm: Algorithm,
    /// Graph file.
    pub graph: PathBuf,
    /// Aggregator: max or sum (disagreements), min (agreements).
    #[arg(long, value_parser = parse_objective)]
    pub objective: Option<LocalObjective>,
    /// Approximation slack for maxmin-agree.
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// Threads for the c_max guesses of minmax-general.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Vertices 0..K form the LEFT side (local-bipartite); inferred when absent.
    #[arg(long)]
    pub left_size: Option<usize>,
    /// Where to write the clustering.
    #[arg(long, short = 'c')]
    pub clustering: Option<PathBuf>,
    /// Where to write the report (stdout when absent).
    #[arg(long, short = 'r')]
    pub report: Option<PathBuf>,
    /// Also compute the exact optimum.
    #[arg(long)]
    pub oracle: bool,
    /// Write the local-search trace (maxmin-agree).
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Disagree,
    Agree,
    Cut,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub kind: OracleKind,
    /// Graph file, or cut-problem file for `cut`.
    pub input: PathBuf,
    #[arg(long, value_parser = parse_objective)]
    pub objective: Option<LocalObjective>,
    #[arg(long, short = 'c')]
    pub clustering: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Output file (stdout when absent).
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Unit cycle, + edges along the path and one closing - edge.
    GapCycle { n: usize },
    /// Random signed graph with integer weights.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        plus: f64,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unweighted complete graph with random signs.
    Complete {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Unweighted complete bipartite graph; LEFT side is 0..n1.
    Bipartite {
        n1: usize,
        n2: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random min-max s-t cut problem with s = 0 and t = n-1.
    St {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 1)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Cut-problem file.
    pub input: PathBuf,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapdemoArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    pub n: Option<usize>,
    #[arg(long, requires = "to")]
    pub from: Option<usize>,
    #[arg(long, requires = "from")]
    pub to: Option<usize>,
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn std::io::Write) -> CliResult {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Oracle(args) => cmd_oracle(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Convert(args) => cmd_convert(&args, out),
        Command::Gapdemo(args) => cmd_gapdemo(&args, out),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<SignedGraph> {
    parse_graph(&read_file(path)?).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn std::io::Write) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::precondition(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::internal(format!("cannot write output: {e}"))),
    }
}

fn instance_summary(report: &mut RunReport, graph: &SignedGraph) {
    report
        .set("n", graph.n())
        .set("m", graph.m())
        .set("total_weight", graph.total_weight())
        .set("plus_edges", graph.count_sign(Sign::Plus))
        .set("minus_edges", graph.count_sign(Sign::Minus));
}

fn oracle_error(e: OracleError) -> CliError {
    CliError::precondition(e.to_string())
}

fn seven_bound_holds(dis: &[f64], metric: &MetricSolution, only: impl Fn(usize) -> bool) -> bool {
    (0..dis.len()).filter(|&u| only(u)).all(|u| dis[u] <= 7.0 * metric.disagreement()[u] + 1e-6)
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn std::io::Write) -> CliResult {
    let graph = read_graph(&args.graph)?;
    let start = Instant::now();
    let mut report = RunReport::new();
    report.set("algorithm", args.algorithm.name());
    instance_summary(&mut report, &graph);
    let clustering = match args.algorithm {
        Algorithm::MinmaxGeneral => solve_general(args, &graph, &mut report)?,
        Algorithm::LocalComplete | Algorithm::LocalBipartite => solve_ball(args, &graph, &mut report)?,
        Algorithm::MaxminAgree => solve_agree(args, &graph, &mut report)?,
    };
    report.set("clusters", clustering.num_clusters());
    report.set("wall_time_ms", format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    if let Some(path) = &args.clustering {
        emit(Some(path), &write_clustering(&clustering), out)?;
    }
    emit(args.report.as_deref(), &report.to_string(), out)
}

fn disagreement_objective(args: &SolveArgs, allowed: &[LocalObjective]) -> CliResult<LocalObjective> {
    let obj = args.objective.unwrap_or(LocalObjective::Max);
    if !allowed.contains(&obj) {
        return Err(CliError::precondition(format!(
            "{} does not support objective `{}`",
            args.algorithm.name(),
            obj.name()
        )));
    }
    Ok(obj)
}

fn solve_general(args: &SolveArgs, graph: &SignedGraph, report: &mut RunReport) -> CliResult<Clustering> {
    disagreement_objective(args, &[LocalObjective::Max])?;
    if args.jobs == 0 {
        return Err(CliError::precondition("--jobs must be at least 1"));
    }
    let outcome = solve_minmax_jobs(graph, args.jobs).map_err(|e| CliError::internal(e.to_string()))?;
    let dis = disagreement_vector(graph, &outcome.clustering);
    let value = evaluate_objective(LocalObjective::Max, &dis);
    if value != outcome.value {
        return Err(CliError::internal("reported value does not match the clustering"));
    }
    report.set("objective", "max");
    if let Some(lp) = outcome.lp_bound {
        report.set("lp_bound", lp);
    }
    match outcome.c_max {
        Some(c) => report.set("cmax", c),
        None => report.set("cmax", "exact"),
    };
    let feasible = outcome.guesses.iter().filter(|g| g.value.is_some()).count();
    report.set("guesses", outcome.guesses.len()).set("feasible_guesses", feasible);
    report.set("approx_bound_factor", APPROX_FACTOR * (graph.n() as f64).sqrt());
    report.set("value", value);
    if args.oracle {
        let (opt, _) = exact_min_local_disagreements(graph, LocalObjective::Max).map_err(oracle_error)?;
        report.set("oracle_value", opt);
    }
    report.set("vector_kind", "disagree").set_vector("vector", &dis);
    Ok(outcome.clustering)
}

fn solve_ball(args: &SolveArgs, graph: &SignedGraph, report: &mut RunReport) -> CliResult<Clustering> {
    let obj = disagreement_objective(args, &[LocalObjective::Max, LocalObjective::Sum])?;
    let sides = if args.algorithm == Algorithm::LocalBipartite {
        let sides = match args.left_size {
            Some(k) => BipartiteSides::split_at(graph, k),
            None => BipartiteSides::infer(graph),
        }
        .ok_or_else(|| CliError::precondition("input is not bipartite with the requested sides"))?;
        if !sides.is_complete_bipartite(graph) {
            return Err(CliError::precondition("input is not a complete bipartite graph"));
        }
        Some(sides)
    } else {
        if !graph.is_complete() {
            return Err(CliError::precondition("input is not a complete graph"));
        }
        None
    };
    let metric = solve_disagreement_relaxation(graph, obj, &[]).map_err(|e| CliError::internal(e.to_string()))?;
    let clustering = match &sides {
        Some(s) => greedy_clustering_bipartite(&metric, s),
        None => greedy_clustering_complete(&metric),
    };
    let dis = disagreement_vector(graph, &clustering);
    let on_left = |u: usize| sides.as_ref().is_none_or(|s| s.is_left(u));
    let holds = seven_bound_holds(&dis, &metric, on_left);
    // The per-vertex bound is only promised for unit weights.
    if graph.is_unweighted() && !holds {
        return Err(CliError::internal("per-vertex bound disagree <= 7·D violated"));
    }
    report.set("objective", obj.name());
    report.set("lp_bound", metric.objective_value());
    report.set("unweighted", graph.is_unweighted());
    report.set("seven_bound_holds", holds);
    report.set("value", evaluate_objective(obj, &dis));
    if let Some(s) = &sides {
        let left: Vec<f64> = s.left().map(|u| dis[u]).collect();
        report.set("left_size", left.len());
        report.set("value_left", evaluate_objective(obj, &left));
    }
    if args.oracle {
        let (opt, _) = exact_min_local_disagreements(graph, obj).map_err(oracle_error)?;
        report.set("oracle_value", opt);
    }
    report.set("vector_kind", "disagree").set_vector("vector", &dis);
    Ok(clustering)
}

fn solve_agree(args: &SolveArgs, graph: &SignedGraph, report: &mut RunReport) -> CliResult<Clustering> {
    if args.objective.is_some_and(|o| o != LocalObjective::Min) {
        return Err(CliError::precondition("maxmin-agree only supports objective `min`"));
    }
    if !(args.eps > 0.0 && args.eps.is_finite()) {
        return Err(CliError::precondition(format!("--eps must be positive, got {}", args.eps)));
    }
    let outcome = solve_maxmin_agreements(graph, args.eps).map_err(|e| CliError::precondition(e.to_string()))?;
    let cert = &outcome.certificate;
    if !cert.holds() {
        return Err(CliError::internal(format!("certificate check failed: {cert:?}")));
    }
    let agree = agreement_vector(graph, &outcome.clustering);
    report
        .set("objective", "min")
        .set("eps", cert.eps)
        .set("eps_internal", cert.eps_int)
        .set("c_star", cert.c_star)
        .set("threshold", cert.threshold)
        .set("reduced_min_agree", cert.reduced_min_agree)
        .set("iterations", cert.iterations)
        .set("iteration_bound", cert.iteration_bound)
        .set("value", evaluate_objective(LocalObjective::Min, &agree));
    if args.oracle {
        let (opt, _) = exact_max_local_agreements(graph, LocalObjective::Min).map_err(oracle_error)?;
        report.set("oracle_value", opt);
    }
    report.set("vector_kind", "agree").set_vector("vector", &agree);
    if let Some(path) = &args.trace {
        fs::write(path, format_trace(&outcome.trace))
            .map_err(|e| CliError::precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome.clustering)
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn std::io::Write) -> CliResult {
    let mut report = RunReport::new();
    let clustering = match args.kind {
        OracleKind::Disagree | OracleKind::Agree => {
            let graph = read_graph(&args.input)?;
            instance_summary(&mut report, &graph);
            let disagree = args.kind == OracleKind::Disagree;
            let obj = args.objective.unwrap_or(if disagree { LocalObjective::Max } else { LocalObjective::Min });
            let (value, clustering) = if disagree {
                exact_min_local_disagreements(&graph, obj)
            } else {
                exact_max_local_agreements(&graph, obj)
            }
            .map_err(oracle_error)?;
            let (kind, vector) = if disagree {
                ("disagree", disagreement_vector(&graph, &clustering))
            } else {
                ("agree", agreement_vector(&graph, &clustering))
            };
            report.set("objective", obj.name()).set("value", value);
            report.set("vector_kind", kind).set_vector("vector", &vector);
            clustering
        }
        OracleKind::Cut => {
            let problem = parse_cut_problem(&read_file(&args.input)?)
                .map_err(|e| CliError::parse(format!("{}: {e}", args.input.display())))?;
            instance_summary(&mut report, problem.base());
            let (value, clustering) = exact_minmax_cut(&problem).map_err(oracle_error)?;
            report.set("problem", problem.kind().name()).set("value", value);
            clustering
        }
    };
    report.set("clusters", clustering.num_clusters());
    if let Some(path) = &args.clustering {
        emit(Some(path), &write_clustering(&clustering), out)?;
    }
    emit(None, &report.to_string(), out)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn std::io::Write) -> CliResult {
    let bad = |e: String| CliError::precondition(e);
    let text = match &args.kind {
        GenKind::GapCycle { n } => write_graph(&gap_cycle(*n).map_err(|e| bad(e.to_string()))?),
        GenKind::Random { n, plus, edge_prob, max_weight, seed } => {
            let params = RandomSignedParams::new(*n, *plus, *max_weight).with_edge_probability(*edge_prob);
            write_graph(&try_random_signed(&params, *seed).map_err(|e| bad(e.to_string()))?)
        }
        GenKind::Complete { n, seed } => {
            if *n == 0 {
                return Err(bad("n must be positive".into()));
            }
            write_graph(&complete_random(*n, *seed))
        }
        GenKind::Bipartite { n1, n2, seed } => {
            if n1 + n2 == 0 {
                return Err(bad("graph needs at least one vertex".into()));
            }
            let (g, _) = complete_bipartite_random(*n1, *n2, *seed);
            format!("# left side: vertices 0..{n1}\n{}", write_graph(&g))
        }
        GenKind::St { n, edge_prob, max_weight, seed } => {
            write_cut_problem(&random_st_problem(*n, *edge_prob, *max_weight, *seed).map_err(|e| bad(e.to_string()))?)
        }
    };
    emit(args.output.as_deref(), &text, out)
}

fn cmd_convert(args: &ConvertArgs, out: &mut dyn std::io::Write) -> CliResult {
    let problem = parse_cut_problem(&read_file(&args.input)?)
        .map_err(|e| CliError::parse(format!("{}: {e}", args.input.display())))?;
    let enc = encode(&problem).map_err(|e| CliError::precondition(e.to_string()))?;
    let text = format!("# big_weight={}\n{}", enc.big_weight, write_graph(&enc.graph));
    emit(args.output.as_deref(), &text, out)
}

fn cmd_gapdemo(args: &GapdemoArgs, out: &mut dyn std::io::Write) -> CliResult {
    let range = match (args.n, args.from, args.to) {
        (Some(n), _, _) => n..=n,
        (None, Some(a), Some(b)) => a..=b,
        _ => 10..=10,
    };
    let many = range.start() != range.end();
    let mut text = String::new();
    for n in range {
        let g = gap_cycle(n).map_err(|e| CliError::precondition(e.to_string()))?;
        let lp_d = solve_disagreement_relaxation(&g, LocalObjective::Max, &[])
            .map_err(|e| CliError::internal(e.to_string()))?
            .objective_value();
        let (int_d, _) = exact_min_local_disagreements(&g, LocalObjective::Max).map_err(oracle_error)?;
        let lp_a = solve_agreements_relaxation(&g).map_err(|e| CliError::internal(e.to_string()))?.objective_value();
        let (int_a, _) = exact_max_local_agreements(&g, LocalObjective::Min).map_err(oracle_error)?;
        if many {
            text.push_str(&format!("n={n}\n"));
        }
        text.push_str(&format!("disagree: lp={} int={int_d} ratio={}\n", decimal4(lp_d), decimal4(int_d / lp_d)));
        text.push_str(&format!("agree: lp={} int={int_a} ratio={}\n", decimal4(lp_a), decimal4(int_a / lp_a)));
    }
    emit(None, &text, out)
}
