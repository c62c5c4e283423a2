use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hyperrecon::textio::{parse_cliques, parse_graph, parse_hypergraph};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperrecon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_project_recover_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("model.json");
    fs::write(
        &config,
        r#"{"n": 60, "classes": [{"degree": 2, "exponent": 0.3}, {"degree": 3, "exponent": 0.5}]}"#,
    )
    .unwrap();
    let hyper = dir.path().join("h.txt");
    let graph = dir.path().join("g.txt");
    let cliques = dir.path().join("c.txt");
    ok(&["generate", "--config", p(&config), "--seed", "4", "--out", p(&hyper)]);
    ok(&["project", "--input", p(&hyper), "--out", p(&graph)]);
    ok(&["recover", "--input", p(&graph), "--degree", "3", "--n", "60", "--out", p(&cliques)]);

    let h = parse_hypergraph(&fs::read_to_string(&hyper).unwrap()).unwrap();
    let g = parse_graph(&fs::read_to_string(&graph).unwrap(), Some(60)).unwrap();
    let c = parse_cliques(&fs::read_to_string(&cliques).unwrap(), 3).unwrap();
    assert_eq!(h.n, 60);
    assert_eq!(g, hyperrecon::model::project(&h));
    assert_eq!(c, hyperrecon::estimator::recover(&g, 3));

    // same seed, same file
    let again = ok(&["generate", "--config", p(&config), "--seed", "4"]);
    assert_eq!(again, fs::read_to_string(&hyper).unwrap());
}

#[test]
fn trial_prints_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("model.json");
    fs::write(&config, r#"{"n": 50, "classes": [{"degree": 3, "exponent": 0.4}]}"#).unwrap();
    let out = ok(&["trial", "--config", p(&config), "--target-degree", "3", "--seed", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["true_count", "est_count", "false_positives", "false_negatives", "ratio"] {
        assert!(v.get(key).is_some(), "missing {key} in {out}");
    }
}

#[test]
fn gtable_lists_clique_and_star_exponents() {
    let out = ok(&["gtable", "--degrees", "3,4", "--deltas", "0.5"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "d,delta,g_clique,g_star,argmax_cover");
    assert_eq!(lines.len(), 3);
    // d = 3: max(3δ - 3, 3(δ - 1)) = -1.5, star 2(δ - 1) = -1
    assert!(lines[1].starts_with("3,0.5,-1.5,-1,"), "{}", lines[1]);
    // d = 4: max(4δ - 5, 6(δ - 1)) = -3, star -1.5
    assert!(lines[2].starts_with("4,0.5,-3,-1.5,"), "{}", lines[2]);
}

#[test]
fn sweep_writes_the_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    fs::write(
        &config,
        r#"{"n_grid": [30], "classes": [{"degree": 3, "exponent_grid": [0.2, 0.6]}], "target_degree": 3, "trials_per_cell": 3, "base_seed": 1}"#,
    )
    .unwrap();
    let out = ok(&["sweep", "--config", p(&config)]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], hyperrecon::harness::SWEEP_CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains(",true,") && lines[2].contains(",false,"), "{out}");
}

#[test]
fn probcheck_emits_one_row_per_n() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("model.json");
    fs::write(&config, r#"{"n": 20, "classes": [{"degree": 3, "exponent": 0.5}]}"#).unwrap();
    let out = ok(&[
        "probcheck", "--config", p(&config), "--edges", "0-1,1-2,0-2", "--n-grid", "20,40", "--trials", "500",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,formula,mc_estimate,stderr,lower,upper");
    assert_eq!(lines.len(), 3);
    let fields: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(fields[0], 20.0);
    assert!(fields[4] <= fields[5]);
}

#[test]
fn bad_input_exits_nonzero_with_message() {
    let out = run(&["recover", "--input", "/nonexistent/graph.txt", "--degree", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("model.json");
    fs::write(&config, r#"{"n": 20, "classes": [{"degree": 3, "exponent": 1.5}]}"#).unwrap();
    let out = run(&["generate", "--config", p(&config)]);
    assert_eq!(out.status.code(), Some(1));
}
