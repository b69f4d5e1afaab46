//! Benchmark harness: a fixed seeded instance grid, one pipeline run per
//! row, and deterministic CSV / JSON-lines writers.
//!
//! Reproducibility contract: with the same master seed (and no `--timing`)
//! two runs emit byte-identical files. Timing is therefore opt-in; with it
//! enabled the wall-time column carries real measurements and the byte
//! identity no longer holds.

use cutpack::generators::{self, GenSpec};
use cutpack::graph::{Graph, SplitPartition};
use cutpack::interval::IntervalModel;
use cutpack::oracle::{exact_maxcut, OracleBudget};
use cutpack::rounding::{pipeline_solve, PipelineConfig, Representation};
use rayon::prelude::*;
use std::time::Instant;

pub enum InstanceClass {
    Interval(IntervalModel),
    Split(SplitPartition),
    Plain,
}

pub struct BenchInstance {
    pub id: String,
    pub spec: GenSpec,
    pub graph: Graph,
    pub class: InstanceClass,
}

/// One row of a finished suite; column order of the CSV below follows the
/// field order here.
pub struct BenchRecord {
    pub id: String,
    pub spec: String,
    pub n: usize,
    pub m: usize,
    pub branch: Option<String>,
    pub cut_size: usize,
    pub oracle_mc: Option<usize>,
    pub sdp_objective: Option<f64>,
    pub ratio_vs_oracle: Option<f64>,
    pub ratio_vs_sdp: Option<f64>,
    pub eta: Option<f64>,
    pub trials: usize,
    pub wall_ms: Option<u128>,
    pub seed: u64,
}

/// The default instance grid: random interval models across densities, the
/// dyadic segment-tree family, random split graphs, both fixed demo
/// instances, and plain rows (no structural representation) built from the
/// chordal pendant/universal construction and small random models.
pub fn default_suite(master_seed: u64) -> Vec<BenchInstance> {
    let mut suite = Vec::new();
    let derive = |i: u64| master_seed.wrapping_add(i.wrapping_mul(7919));

    for (i, &(n, scale)) in [(8, 4), (12, 5), (16, 6), (24, 8), (40, 10), (80, 12)]
        .iter()
        .enumerate()
    {
        let seed = derive(i as u64);
        let model = generators::gen_random_interval(n, scale, seed);
        suite.push(BenchInstance {
            id: format!("interval-n{n:03}"),
            spec: GenSpec::RandomInterval { n, length_scale: scale, seed },
            graph: model.graph().clone(),
            class: InstanceClass::Interval(model),
        });
    }

    for layers in 2..=8u32 {
        let model = generators::gen_segment_tree(layers);
        suite.push(BenchInstance {
            id: format!("segment-tree-k{layers}"),
            spec: GenSpec::SegmentTree { layers },
            graph: model.graph().clone(),
            class: InstanceClass::Interval(model),
        });
    }

    for (i, &(nc, ni, p)) in [
        (4, 4, 0.5),
        (5, 6, 0.7),
        (8, 8, 0.4),
        (12, 10, 0.5),
        (20, 15, 0.3),
        (40, 20, 0.6),
    ]
    .iter()
    .enumerate()
    {
        let seed = derive(100 + i as u64);
        let (graph, part) = generators::gen_random_split(nc, ni, p, seed);
        suite.push(BenchInstance {
            id: format!("split-k{nc:02}i{ni:02}"),
            spec: GenSpec::RandomSplit { n_clique: nc, n_indep: ni, attach_prob: p, seed },
            graph,
            class: InstanceClass::Split(part),
        });
    }

    {
        let model = generators::demo_interval_model();
        suite.push(BenchInstance {
            id: "demo-interval".into(),
            spec: GenSpec::DemoInterval,
            graph: model.graph().clone(),
            class: InstanceClass::Interval(model),
        });
        let (graph, part) = generators::demo_split_graph();
        suite.push(BenchInstance {
            id: "demo-split".into(),
            spec: GenSpec::DemoSplit,
            graph,
            class: InstanceClass::Split(part),
        });
    }

    for layers in [2u32, 3] {
        let graph = generators::gen_chordal_counterexample(layers);
        suite.push(BenchInstance {
            id: format!("plain-pendant-k{layers}"),
            spec: GenSpec::ChordalCounterexample { layers },
            graph,
            class: InstanceClass::Plain,
        });
    }

    for (i, &(n, scale)) in [(10, 5), (14, 6)].iter().enumerate() {
        let seed = derive(200 + i as u64);
        let model = generators::gen_random_interval(n, scale, seed);
        suite.push(BenchInstance {
            id: format!("plain-rand-n{n:02}"),
            spec: GenSpec::RandomInterval { n, length_scale: scale, seed },
            graph: model.graph().clone(),
            class: InstanceClass::Plain,
        });
    }

    suite
}

/// Runs one row. The oracle only fires within its vertex budget; rows over
/// budget carry explicit nulls.
pub fn run_row(
    inst: &BenchInstance,
    trials: usize,
    row_seed: u64,
    timing: bool,
) -> Result<BenchRecord, String> {
    let started = Instant::now();
    let cfg = PipelineConfig::new(trials, row_seed);
    let repr = match &inst.class {
        InstanceClass::Interval(model) => Representation::Interval(model),
        InstanceClass::Split(part) => Representation::Split(part),
        InstanceClass::Plain => Representation::Plain,
    };
    let res = pipeline_solve(&inst.graph, repr, &cfg).map_err(|e| format!("{}: {e}", inst.id))?;

    let budget = OracleBudget::default();
    let oracle_mc = if inst.graph.n() <= budget.max_vertices_cut {
        Some(exact_maxcut(&inst.graph, &budget).map_err(|e| e.to_string())?.0)
    } else {
        None
    };
    let wall_ms = timing.then(|| started.elapsed().as_millis());
    Ok(BenchRecord {
        id: inst.id.clone(),
        spec: serde_json::to_string(&inst.spec).expect("genspec serializes"),
        n: inst.graph.n(),
        m: inst.graph.m(),
        branch: res.branch.map(|b| b.to_string()),
        cut_size: res.cut.size(),
        oracle_mc,
        sdp_objective: res.sdp_objective,
        ratio_vs_oracle: oracle_mc
            .map(|mc| if mc == 0 { 1.0 } else { res.cut.size() as f64 / mc as f64 }),
        ratio_vs_sdp: res.sdp_objective.map(|obj| res.cut.size() as f64 / obj),
        eta: res.eta,
        trials,
        wall_ms,
        seed: row_seed,
    })
}

/// Runs the whole suite, optionally on a bounded rayon pool. Row order in
/// the output follows the grid regardless of completion order.
pub fn run_suite(
    suite: &[BenchInstance],
    trials: usize,
    master_seed: u64,
    jobs: usize,
    timing: bool,
) -> Result<Vec<BenchRecord>, String> {
    let rows: Vec<(usize, &BenchInstance)> = suite.iter().enumerate().collect();
    let run_all = || {
        rows.par_iter()
            .map(|&(i, inst)| run_row(inst, trials, master_seed.wrapping_add(i as u64), timing))
            .collect::<Result<Vec<_>, _>>()
    };
    let mut records = if jobs == 0 {
        run_all()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(run_all)
    }?;
    // Output order is by instance id, whatever the completion order was.
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn fmt_opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub const CSV_HEADER: &str = "id,spec,n,m,branch,cut_size,oracle_mc,sdp_objective,\
ratio_vs_oracle,ratio_vs_sdp,eta,trials,wall_ms,seed";

/// Renders the CSV: fixed column order, floats at 17 significant digits,
/// empty fields for nulls.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.id,
            csv_quote(&r.spec),
            r.n,
            r.m,
            fmt_opt(&r.branch),
            r.cut_size,
            fmt_opt(&r.oracle_mc),
            fmt_opt_f64(r.sdp_objective),
            fmt_opt_f64(r.ratio_vs_oracle),
            fmt_opt_f64(r.ratio_vs_sdp),
            fmt_opt_f64(r.eta),
            r.trials,
            fmt_opt(&r.wall_ms),
            r.seed,
        ));
    }
    out
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn json_opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_else(|| "null".into())
}

fn json_opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "null".into())
}

/// Renders JSON-lines with the same fields and float formatting as the CSV.
/// Lines are assembled by hand so the byte layout is pinned by this file.
pub fn to_jsonl(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "{{\"id\":{},\"spec\":{},\"n\":{},\"m\":{},\"branch\":{},\"cut_size\":{},\
\"oracle_mc\":{},\"sdp_objective\":{},\"ratio_vs_oracle\":{},\"ratio_vs_sdp\":{},\
\"eta\":{},\"trials\":{},\"wall_ms\":{},\"seed\":{}}}\n",
            json_str(&r.id),
            json_str(&r.spec),
            r.n,
            r.m,
            r.branch.as_deref().map(json_str).unwrap_or_else(|| "null".into()),
            r.cut_size,
            json_opt(&r.oracle_mc),
            json_opt_f64(r.sdp_objective),
            json_opt_f64(r.ratio_vs_oracle),
            json_opt_f64(r.ratio_vs_sdp),
            json_opt_f64(r.eta),
            r.trials,
            json_opt(&r.wall_ms),
            r.seed,
        ));
    }
    out
}

/// Writes `prefix.csv` and `prefix.jsonl`.
pub fn write_results(records: &[BenchRecord], prefix: &std::path::Path) -> std::io::Result<()> {
    let csv_path = prefix.with_extension("csv");
    let jsonl_path = prefix.with_extension("jsonl");
    std::fs::write(&csv_path, to_csv(records))?;
    std::fs::write(&jsonl_path, to_jsonl(records))?;
    Ok(())
}
