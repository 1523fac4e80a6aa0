use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motifgraph"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn seed_is_mandatory_for_experiments() {
    let out = run(&["curve", "--motif", "edge", "--n", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"motif": "edge", "n": 20, "seed": 1, "p_grid": [0.2, 0.1]}"#).unwrap();
    let out = run(&["curve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    fs::write(&cfg, r#"{"motif": "edge", "colour": "red"}"#).unwrap();
    let out = run(&["curve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["curve", "--motif", "path:1", "--n", "20", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curve_writes_csv_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let args = [
        "curve", "--motif", "triangle", "--n", "30", "--trials", "20", "--seed", "4",
        "--property", "connected", "--p-grid", "0.001,0.01,0.1", "--csv",
        csv.to_str().unwrap(),
    ];
    let a = run(&args);
    let first_csv = fs::read_to_string(&csv).unwrap();
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first_csv, fs::read_to_string(&csv).unwrap());
    assert!(first_csv.starts_with("p_or_m,trials,hits,p_hat,wilson_lo,wilson_hi\n"));
    assert_eq!(first_csv.lines().count(), 4);
    let v = json(&a);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert!(v["x_of_n"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_file_and_flags_merge() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"motif": "edge", "n": 10, "trials": 5, "seed": 9, "m_grid": [0, 45]}"#,
    )
    .unwrap();
    let v = json(&run(&["curve", "--config", cfg.to_str().unwrap(), "--trials", "7"]));
    assert_eq!(v["trials"], 7);
    assert_eq!(v["grid"], "m");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts[0]["hits"], 0);
    assert_eq!(pts[1]["hits"], 7);
}

#[test]
fn sample_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let out = run(&[
        "sample", "--motif", "triangle", "--n", "12", "--p", "1", "--seed", "2", "--out",
        g.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let path = g.to_str().unwrap();
    assert_eq!(run(&["check", "--graph", path, "--property", "ham"]).status.code(), Some(0));
    assert_eq!(
        run(&["check", "--graph", path, "--property", "contains:clique:5"]).status.code(),
        Some(0)
    );

    let out = run(&["sample", "--motif", "edge", "--n", "6", "--m", "1", "--seed", "2", "--out", path]);
    assert!(out.status.success());
    assert_eq!(run(&["check", "--graph", path, "--property", "connected"]).status.code(), Some(1));
    let out = run(&["check", "--graph", path, "--property", "ham", "--ham-budget", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_edges_text() {
    let out = run(&["sample", "--motif", "path:3", "--n", "3", "--m", "3", "--seed", "1", "--edges"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 1\n0 2\n1 2\n");
}

#[test]
fn gamma_reports_closed_form_for_paths() {
    let v = json(&run(&["gamma", "--subject", "clique:4", "--motif", "path:3"]));
    assert_eq!(v["gamma_bar"], "5/3");
    assert_eq!(v["exponent"], "4/3");
    assert_eq!(v["closed_form"]["gamma_bar"], "5/3");
    let v = json(&run(&["gamma", "--subject", "cycle:4", "--motif", "triangle", "--exhaustive"]));
    assert!(v.get("closed_form").is_none());
}

#[test]
fn formulas_match_hand_counts() {
    let v = json(&run(&["formulas", "--motif", "triangle", "--n", "5", "--r", "2", "--d", "2"]));
    assert_eq!(v["total_copies"], "10");
    assert_eq!(v["m_1"], "6");
    // triangles meeting {0,1}: all but the one on {2,3,4}
    assert_eq!(v["m_r"], "9");
    assert_eq!(v["q_r"], "9");
    assert_eq!(v["aut"], 6);
    assert_eq!(v["threshold"]["delta_d"], 0);
}

#[test]
fn process_and_iso_run() {
    let v = json(&run(&[
        "process", "--motif", "path:3", "--n", "20", "--trials", "4", "--seed", "3", "--targets",
        "conn,pm",
    ]));
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    assert!(v["summary"]["frac_h_eq_2"].is_null());

    let v = json(&run(&["iso", "--motif", "edge", "--n", "50", "--trials", "10", "--seed", "1"]));
    assert_eq!(v["counts"].as_array().unwrap().len(), 10);
}

#[test]
fn phalf_and_appear_run() {
    let v = json(&run(&[
        "phalf", "--motif", "edge", "--n", "2", "--trials", "200", "--seed", "5", "--property",
        "connected", "--rtol", "0.1",
    ]));
    let p = v["p_half"].as_f64().unwrap();
    assert!((0.35..0.65).contains(&p), "{p}");

    let v = json(&run(&[
        "appear", "--subject", "path:3", "--motif", "path:3", "--n", "10", "--trials", "5",
        "--seed", "1", "--m-grid", "1,2",
    ]));
    assert_eq!(v["points"][0]["hits"], 5);
}
