//! End-to-end runs of the `cutpack` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cutpack")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cutpack-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn constants_prints_the_rounding_constant() {
    let v = stdout_json(&run(&["constants"]));
    let alpha = v["alpha_gw"].as_f64().unwrap();
    assert!((alpha - 0.8785672).abs() < 1e-6);
    assert_eq!(v["theta_c_degrees"].as_f64().unwrap().round() as i64, 134);
}

#[test]
fn gen_solve_pack_round_trip_on_an_interval_instance() {
    let dir = tmp_dir("roundtrip");
    let prefix = dir.join("inst");
    let out = run(&[
        "gen",
        "--kind",
        "random-interval",
        "--n",
        "30",
        "--length-scale",
        "7",
        "--seed",
        "5",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let intervals = prefix.with_extension("intervals");
    assert!(intervals.exists());
    assert!(prefix.with_extension("edges").exists());
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(prefix.with_extension("genspec.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["kind"], "random-interval");
    assert_eq!(sidecar["seed"], 5);

    let solve = stdout_json(&run(&[
        "solve",
        "--class",
        "interval",
        "--input",
        intervals.to_str().unwrap(),
        "--trials",
        "50",
        "--seed",
        "9",
    ]));
    assert!(solve["size"].as_u64().unwrap() > 0);
    let side = solve["side"].as_str().unwrap();
    assert_eq!(side.len(), 30);

    let pack = stdout_json(&run(&[
        "pack",
        "--class",
        "interval",
        "--input",
        intervals.to_str().unwrap(),
    ]));
    assert!(pack["branch"] == "big-cut" || pack["branch"] == "packed");
}

#[test]
fn solve_on_the_demo_split_instance_reports_provenance() {
    let dir = tmp_dir("split");
    let prefix = dir.join("fig");
    assert!(run(&["gen", "--kind", "demo-split", "--out", prefix.to_str().unwrap()])
        .status
        .success());
    let edges = prefix.with_extension("edges");
    let v = stdout_json(&run(&[
        "solve",
        "--class",
        "split",
        "--input",
        edges.to_str().unwrap(),
        "--trials",
        "200",
        "--seed",
        "1",
    ]));
    let prov = v["provenance"].as_str().unwrap();
    assert!(
        ["structural-cut", "bridge-augmented", "gw-round", "perturbed-round"].contains(&prov),
        "unexpected provenance {prov}"
    );
    // mc of the demo split graph is 8; the pipeline should find it.
    assert_eq!(v["size"].as_u64().unwrap(), oracle_mc(&edges));
}

fn oracle_mc(edges: &Path) -> u64 {
    let v = stdout_json(&run(&["oracle", "--input", edges.to_str().unwrap()]));
    v["maxcut"].as_u64().unwrap()
}

#[test]
fn malformed_input_exits_2_with_line_number() {
    let dir = tmp_dir("bad");
    let path = dir.join("bad.edges");
    std::fs::write(&path, "3 2\n0 1\n1 7\n").unwrap();
    let out = run(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn non_split_input_to_split_class_exits_2() {
    let dir = tmp_dir("c4");
    let path = dir.join("c4.edges");
    std::fs::write(&path, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = run(&["solve", "--class", "split", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_budget_violation_exits_2() {
    let dir = tmp_dir("budget");
    let prefix = dir.join("big");
    assert!(run(&[
        "gen",
        "--kind",
        "random-interval",
        "--n",
        "40",
        "--seed",
        "3",
        "--out",
        prefix.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&[
        "oracle",
        "--input",
        prefix.with_extension("edges").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn split_reduction_gen_produces_a_split_graph() {
    let dir = tmp_dir("reduction");
    let src = dir.join("src.edges");
    std::fs::write(&src, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    let prefix = dir.join("red");
    assert!(run(&[
        "gen",
        "--kind",
        "split-reduction",
        "--input",
        src.to_str().unwrap(),
        "--out",
        prefix.to_str().unwrap()
    ])
    .status
    .success());
    let v = stdout_json(&run(&[
        "pack",
        "--class",
        "split",
        "--input",
        prefix.with_extension("edges").to_str().unwrap(),
    ]));
    assert!(v["branch"] == "big-cut" || v["branch"] == "packed");
}

#[test]
fn solve_is_deterministic_given_a_seed() {
    let dir = tmp_dir("det");
    let prefix = dir.join("g");
    assert!(run(&[
        "gen",
        "--kind",
        "random-split",
        "--n-clique",
        "12",
        "--n-indep",
        "6",
        "--seed",
        "8",
        "--out",
        prefix.to_str().unwrap()
    ])
    .status
    .success());
    let edges = prefix.with_extension("edges");
    let args = [
        "solve",
        "--class",
        "split",
        "--input",
        edges.to_str().unwrap(),
        "--trials",
        "80",
        "--seed",
        "77",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout, "same flags and seed, same bytes");
}

#[test]
fn bench_ratio_invariants_hold_on_the_default_suite() {
    use cutpack_cli::bench;
    let suite = bench::default_suite(31337);
    let records = bench::run_suite(&suite, 500, 31337, 0, false).unwrap();
    assert_eq!(records.len(), suite.len());
    for r in &records {
        if let Some(ratio) = r.ratio_vs_sdp {
            assert!(ratio <= 1.0 + 1e-9, "{}: ratio_vs_sdp = {ratio}", r.id);
        }
        if let Some(ratio) = r.ratio_vs_oracle {
            assert!(ratio <= 1.0 + 1e-9, "{}: ratio_vs_oracle = {ratio}", r.id);
        }
        assert!(r.wall_ms.is_none(), "timing must be opt-in");
    }
}
