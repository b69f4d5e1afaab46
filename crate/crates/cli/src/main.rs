//! `cutpack` command line: instance generation, the decompose-and-round
//! Max-Cut pipeline, exact oracles, and the benchmark harness.
//!
//! Exit codes: 0 success, 2 input error (malformed files, unusable flag
//! combinations), 3 internal-consistency abort (a certified-bipartite edge
//! set failed to 2-color, which indicates a bug, never bad input).

use cutpack_cli::{bench, output};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cutpack::decompose::{interval_maxcut, split_tradeoff, DecomposeError, DEFAULT_EPS, DEFAULT_T};
use cutpack::generators::{self, GenSpec};
use cutpack::graph::{find_split_partition, Graph, SplitPartition};
use cutpack::interval::IntervalModel;
use cutpack::io as fmt_io;
use cutpack::oracle::{exact_maxcut, exact_triangle_packing, is_chordal, OracleBudget};
use cutpack::rounding::{pipeline_solve, PipelineConfig, Representation};
use cutpack::sdp::{alpha_gw_constants, solve_sdp, SdpParams};
use output::{ConstantsJson, CutJson, OutcomeJson};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cutpack", version, about = "Max-Cut toolkit for interval and split graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write edge-list / interval / provenance files
    Gen(GenArgs),
    /// Run the full decompose-and-round pipeline
    Solve(SolveArgs),
    /// Run the structural decomposition only
    Pack(PackArgs),
    /// Solve the relaxation and round, with no decomposition
    Round(RoundArgs),
    /// Exact brute-force references
    Oracle(OracleArgs),
    /// Run the benchmark suite and write CSV + JSON-lines
    Bench(BenchArgs),
    /// Print the rounding constants
    Constants,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    RandomInterval,
    RandomSplit,
    SegmentTree,
    ChordalCounterexample,
    SplitReduction,
    DemoInterval,
    DemoSplit,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Vertex count (random-interval)
    #[arg(long)]
    n: Option<usize>,
    /// Maximum interval length (random-interval)
    #[arg(long, default_value_t = 8)]
    length_scale: i64,
    /// Clique size (random-split)
    #[arg(long)]
    n_clique: Option<usize>,
    /// Independent-set size (random-split)
    #[arg(long)]
    n_indep: Option<usize>,
    /// Attachment probability (random-split)
    #[arg(long, default_value_t = 0.5)]
    attach_prob: f64,
    /// Layer count (segment-tree, chordal-counterexample)
    #[arg(long)]
    layers: Option<u32>,
    /// Source edge-list file (split-reduction)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output prefix; writes <out>.edges, <out>.intervals when available,
    /// and <out>.genspec.json
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveClass {
    Interval,
    Split,
    None,
}

#[derive(Args)]
struct SolveArgs {
    /// Structural representation to exploit: `interval` expects an interval
    /// file, `split` and `none` an edge list
    #[arg(long, value_enum, default_value_t = SolveClass::None)]
    class: SolveClass,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Perturbation width override (defaults to t^2/1e4 for packing density t)
    #[arg(long)]
    eta: Option<f64>,
    /// Factorization rank override
    #[arg(long)]
    rank: Option<usize>,
    /// Classification threshold of the interval procedure
    #[arg(long, default_value_t = DEFAULT_T)]
    t_threshold: f64,
    /// Bag density parameter of the interval procedure
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PackClass {
    Interval,
    Split,
}

#[derive(Args)]
struct PackArgs {
    #[arg(long, value_enum)]
    class: PackClass,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_T)]
    t_threshold: f64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Args)]
struct RoundArgs {
    /// Edge-list file
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Perturbation width (0 reproduces plain hyperplane rounding)
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleWhat {
    Maxcut,
    Packing,
    Chordal,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = OracleWhat::Maxcut)]
    what: OracleWhat,
    #[arg(long, default_value_t = 22)]
    max_vertices: usize,
    #[arg(long, default_value_t = 30)]
    max_edges: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Master seed (mandatory: the suite has no wall-clock default)
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Worker threads; 0 uses the rayon default
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Output prefix; writes <out>.csv and <out>.jsonl
    #[arg(long)]
    out: PathBuf,
    /// Record wall-clock times (breaks byte-identical reproducibility)
    #[arg(long, default_value_t = false)]
    timing: bool,
}

/// Errors mapped to exit codes.
enum CliError {
    /// Bad input: exit 2.
    Input(String),
    /// Internal-consistency abort: exit 3.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn decompose_err(e: DecomposeError) -> CliError {
    match e {
        DecomposeError::CutRealization(inner) => {
            CliError::Internal(format!("internal consistency abort: {inner}"))
        }
        other => CliError::Input(other.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    fmt_io::parse_edge_list(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> Result<IntervalModel, CliError> {
    let text = read_file(path)?;
    fmt_io::parse_intervals(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn detect_split(g: &Graph) -> Result<SplitPartition, CliError> {
    find_split_partition(g)
        .map_err(|e| CliError::Input(format!("input is not usable as a split graph: {e}")))
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) {
    use std::io::Write;
    let payload = serde_json::to_string_pretty(value).expect("payloads serialize");
    // Tolerate a closed pipe (e.g. `cutpack ... | head`).
    let _ = writeln!(std::io::stdout(), "{payload}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Pack(args) => cmd_pack(args),
        Command::Round(args) => cmd_round(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Constants => {
            let (alpha, theta) = alpha_gw_constants();
            print_json(&ConstantsJson {
                alpha_gw: alpha,
                theta_c_radians: theta,
                theta_c_degrees: theta.to_degrees(),
            });
            Ok(())
        }
    }
}

fn require<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Input(format!("--{flag} is required for kind {kind}")))
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let (spec, graph, model): (GenSpec, Graph, Option<IntervalModel>) = match args.kind {
        GenKind::RandomInterval => {
            let n = require(args.n, "n", "random-interval")?;
            let seed = require(args.seed, "seed", "random-interval")?;
            if n == 0 || args.length_scale < 1 {
                return Err(CliError::Input("need n >= 1 and length-scale >= 1".into()));
            }
            let model = generators::gen_random_interval(n, args.length_scale, seed);
            (
                GenSpec::RandomInterval { n, length_scale: args.length_scale, seed },
                model.graph().clone(),
                Some(model),
            )
        }
        GenKind::RandomSplit => {
            let n_clique = require(args.n_clique, "n-clique", "random-split")?;
            let n_indep = require(args.n_indep, "n-indep", "random-split")?;
            let seed = require(args.seed, "seed", "random-split")?;
            if !(0.0..=1.0).contains(&args.attach_prob) {
                return Err(CliError::Input("attach-prob must lie in [0, 1]".into()));
            }
            let (g, _) = generators::gen_random_split(n_clique, n_indep, args.attach_prob, seed);
            (
                GenSpec::RandomSplit {
                    n_clique,
                    n_indep,
                    attach_prob: args.attach_prob,
                    seed,
                },
                g,
                None,
            )
        }
        GenKind::SegmentTree => {
            let layers = require(args.layers, "layers", "segment-tree")?;
            if layers == 0 {
                return Err(CliError::Input("layers must be at least 1".into()));
            }
            let model = generators::gen_segment_tree(layers);
            (GenSpec::SegmentTree { layers }, model.graph().clone(), Some(model))
        }
        GenKind::ChordalCounterexample => {
            let layers = require(args.layers, "layers", "chordal-counterexample")?;
            if layers < 2 {
                return Err(CliError::Input("layers must be at least 2".into()));
            }
            let g = generators::gen_chordal_counterexample(layers);
            (GenSpec::ChordalCounterexample { layers }, g, None)
        }
        GenKind::SplitReduction => {
            let input = require(args.input.as_deref(), "input", "split-reduction")?;
            let g = read_graph(input)?;
            let (out, _) = generators::split_reduction(&g);
            (
                GenSpec::SplitReduction { source: input.display().to_string() },
                out,
                None,
            )
        }
        GenKind::DemoInterval => {
            let model = generators::demo_interval_model();
            (GenSpec::DemoInterval, model.graph().clone(), Some(model))
        }
        GenKind::DemoSplit => {
            let (g, _) = generators::demo_split_graph();
            (GenSpec::DemoSplit, g, None)
        }
    };

    let prefix = args.out;
    write_out(&prefix.with_extension("edges"), &fmt_io::write_edge_list(&graph))?;
    if let Some(model) = &model {
        write_out(&prefix.with_extension("intervals"), &fmt_io::write_intervals(model))?;
    }
    let sidecar = serde_json::to_string_pretty(&spec).expect("genspec serializes") + "\n";
    write_out(&prefix.with_extension("genspec.json"), &sidecar)?;
    eprintln!(
        "wrote {} (n = {}, m = {})",
        prefix.with_extension("edges").display(),
        graph.n(),
        graph.m()
    );
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let cfg = PipelineConfig {
        eta_override: args.eta,
        rank: args.rank,
        t_threshold: args.t_threshold,
        eps: args.eps,
        ..PipelineConfig::new(args.trials, args.seed)
    };
    let result = match args.class {
        SolveClass::Interval => {
            let model = read_model(&args.input)?;
            pipeline_solve(model.graph(), Representation::Interval(&model), &cfg)
        }
        SolveClass::Split => {
            let g = read_graph(&args.input)?;
            let part = detect_split(&g)?;
            pipeline_solve(&g, Representation::Split(&part), &cfg)
        }
        SolveClass::None => {
            let g = read_graph(&args.input)?;
            pipeline_solve(&g, Representation::Plain, &cfg)
        }
    }
    .map_err(|e| match e {
        cutpack::rounding::PipelineError::Decompose(d) => decompose_err(d),
        cutpack::rounding::PipelineError::Sdp(s) => input_err(s),
    })?;

    if let Some(info) = result.sdp_info {
        if !info.converged {
            eprintln!(
                "warning: relaxation stopped after {} sweeps with improvement {:.3e}",
                info.sweeps, info.last_improvement
            );
        }
    }
    print_json(&CutJson::new(
        &result.cut,
        args.trials,
        args.seed,
        result.eta,
        result.sdp_objective,
    ));
    Ok(())
}

fn cmd_pack(args: PackArgs) -> Result<(), CliError> {
    let outcome = match args.class {
        PackClass::Interval => {
            let model = read_model(&args.input)?;
            interval_maxcut(&model, args.t_threshold, args.eps).map_err(decompose_err)?
        }
        PackClass::Split => {
            let g = read_graph(&args.input)?;
            let part = detect_split(&g)?;
            split_tradeoff(&g, &part).map_err(decompose_err)?
        }
    };
    print_json(&OutcomeJson::new(&outcome));
    Ok(())
}

fn cmd_round(args: RoundArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let params = SdpParams { rank: args.rank, ..SdpParams::with_seed(args.seed) };
    let (sol, info) = solve_sdp(&g, &params).map_err(input_err)?;
    if !info.converged {
        eprintln!(
            "warning: relaxation stopped after {} sweeps with improvement {:.3e}",
            info.sweeps, info.last_improvement
        );
    }
    let rcfg = cutpack::rounding::RoundingConfig::new(args.eta, args.trials, args.seed);
    let (plain, perturbed) = cutpack::rounding::round_perturbed(&g, &sol, &rcfg);
    let best = if perturbed.size() > plain.size() { perturbed } else { plain };
    print_json(&CutJson::new(
        &best,
        args.trials,
        args.seed,
        Some(args.eta),
        Some(sol.objective()),
    ));
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let budget = OracleBudget {
        max_vertices_cut: args.max_vertices,
        max_edges_packing: args.max_edges,
        time_limit: None,
    };
    match args.what {
        OracleWhat::Maxcut => {
            let (mc, side) = exact_maxcut(&g, &budget).map_err(input_err)?;
            let cut = cutpack::graph::Cut::from_side(&g, side, cutpack::graph::Provenance::Oracle);
            assert_eq!(cut.size(), mc);
            print_json(&serde_json::json!({
                "maxcut": mc,
                "side": cut.side_bitstring(),
                "provenance": cut.provenance().to_string(),
            }));
        }
        OracleWhat::Packing => {
            let best = exact_triangle_packing(&g, &budget).map_err(input_err)?;
            print_json(&serde_json::json!({ "max_triangle_packing": best }));
        }
        OracleWhat::Chordal => {
            let (verdict, order) = is_chordal(&g);
            print_json(&serde_json::json!({ "chordal": verdict, "elimination_order": order }));
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let suite = bench::default_suite(args.seed);
    let records = bench::run_suite(&suite, args.trials, args.seed, args.jobs, args.timing)
        .map_err(CliError::Input)?;
    bench::write_results(&records, &args.out)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))?;
    let within_oracle = records.iter().filter(|r| r.oracle_mc.is_some()).count();
    eprintln!(
        "bench: {} rows ({} with oracle reference) -> {}.csv / .jsonl",
        records.len(),
        within_oracle,
        args.out.display()
    );
    Ok(())
}
