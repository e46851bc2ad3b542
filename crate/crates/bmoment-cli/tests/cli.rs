use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn bmoment(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmoment"))
        .args(args)
        .env_remove("BMOMENT_TOLERANCE_SCALE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_examples() {
    let o = bmoment(&["classify-graph", path(&data("b_torus_graph.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["class"], "all_nonzero");
    let o = bmoment(&["classify-graph", path(&data("zero_graph.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["class"], "all_zero");
    let o = bmoment(&["classify-graph", path(&data("mixed_graph.json"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("all zero or all nonzero"));
    let o = bmoment(&["classify-graph", path(&data("broken.json"))]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4 column 3"));
    assert_eq!(code(&bmoment(&["classify-graph", "/nonexistent.json"])), 1);
}

#[test]
fn polytope_examples() {
    let g = data("local_model_graph.json");
    let hs = data("local_model_halfspaces.json");
    let o = bmoment(&["polytope", path(&g), path(&hs), "vertices"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let listed: Vec<(String, Vec<String>)> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| {
            let xi = x["xi"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
            (x["vertex"].as_str().unwrap().to_string(), xi)
        })
        .collect();
    let mut sorted = listed.clone();
    sorted.sort();
    assert_eq!(listed, sorted);
    assert_eq!(listed.len(), 4);
    assert!(listed.contains(&("plus".into(), vec!["1".into(), "0".into()])));

    assert_eq!(code(&bmoment(&["polytope", path(&g), path(&hs), "validate"])), 0);
    let o = bmoment(&["polytope", path(&g), path(&data("unbounded_halfspaces.json")), "validate"]);
    assert_eq!(code(&o), 2);
    let report = json(&o);
    let failed: Vec<&str> = report["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["condition"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"iii"));

    let o = bmoment(&["polytope", path(&g), path(&hs), "contains", path(&data("exceptional_point.json"))]);
    assert_eq!((code(&o), json(&o)["contains"].clone()), (0, serde_json::Value::Bool(true)));
    let o = bmoment(&["polytope", path(&g), path(&hs), "contains", path(&data("outside_point.json"))]);
    assert_eq!((code(&o), json(&o)["contains"].clone()), (0, serde_json::Value::Bool(false)));
    assert_eq!(code(&bmoment(&["polytope", path(&g), path(&data("broken.json")), "vertices"])), 1);
}

#[test]
fn moment_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b_sphere.csv");
    let o = bmoment(&["moment", path(&data("b_sphere.json")), "--samples", "100", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "z1,theta1,mu_1,z_flag");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for r in rows {
        let mu: f64 = r.split(',').nth(2).unwrap().parse().unwrap();
        assert!(mu >= -1e-12);
    }

    let out = dir.path().join("local.csv");
    let o = bmoment(&["moment", path(&data("local_model.json")), "--samples", "100", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(v["min"][0].as_f64().unwrap() >= 0.0 && v["max"][0].as_f64().unwrap() <= 1.0);

    let o = bmoment(&["moment", path(&data("b_sphere.json")), "--samples", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("samples must be ≥ 1"));
    let o = bmoment(&["moment", path(&data("unknown_family.json")), "--samples", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.csv"));
        let o = bmoment(&["moment", path(&data("local_model.json")), "--samples", "5000", "--seed", "3", "--out", out.to_str().unwrap()]);
        runs.push((o.stdout, std::fs::read(&out).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
    let a = bmoment(&["verify", "cut", "--samples", "2000"]);
    let b = bmoment(&["verify", "cut", "--samples", "2000"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_over_the_suite_matrix() {
    for suite in ["dichotomy", "weights", "local_model", "zero_weight", "morse_bott", "vertices", "csymplectic", "cut"] {
        let o = bmoment(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stdout));
        let v = json(&o);
        assert_eq!(v["verdict"], "pass");
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["claim"].as_str().is_some_and(|s| !s.is_empty())));
    }
    assert_eq!(code(&bmoment(&["verify", "zero_weights"])), 1);
    assert_eq!(code(&bmoment(&["verify", "dichotomy", "--graph", path(&data("mixed_graph.json"))])), 2);
    assert_eq!(code(&bmoment(&["verify", "dichotomy", "--graph", path(&data("b_torus_graph.json"))])), 0);
    assert_eq!(code(&bmoment(&["verify", "dichotomy", "--graph", path(&data("broken.json"))])), 1);
    assert_eq!(code(&bmoment(&["frobnicate"])), 1);
    assert_eq!(code(&bmoment(&["--help"])), 0);
}

#[test]
fn report_keys_are_sorted() {
    let o = bmoment(&["verify", "weights"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("      \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .take(6)
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn tolerance_scale_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bmoment"))
        .args(["verify", "weights"])
        .env("BMOMENT_TOLERANCE_SCALE", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_bmoment"))
        .args(["verify", "weights"])
        .env("BMOMENT_TOLERANCE_SCALE", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["checks"][0]["tolerance"], 2e-3);
}
