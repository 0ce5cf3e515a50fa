use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn digibu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_digibu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn pgm_file(contents: &[u8]) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".pgm").tempfile().unwrap();
    f.write_all(contents).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_gradient_json() {
    let file = pgm_file(b"P2\n4 4\n3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n");
    let out = digibu(&["analyze", file.path().to_str().unwrap(), "--adjacency", "c1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["image_size"], serde_json::json!([4, 4]));
    assert_eq!(v["adjacency"], "c1");
    assert_eq!(v["lipschitz_constant"], 1);
    assert_eq!(v["bound"], 2);
    assert_eq!(v["best_pair"]["x"], serde_json::json!([1, 0]));
    assert_eq!(v["best_pair"]["antipode"], serde_json::json!([2, 3]));
    assert_eq!(v["best_pair"]["gap"], 1);
    assert_eq!(v["theorem_satisfied"], true);
    for key in ["a", "b", "gap"] {
        assert!(v["lipschitz_witness"].get(key).is_some());
    }
}

#[test]
fn analyze_output_is_deterministic() {
    let mut bytes = b"P5\n5 3\n255\n".to_vec();
    bytes.extend((0u8..15).map(|i| i.wrapping_mul(37)));
    let file = pgm_file(&bytes);
    let path = file.path().to_str().unwrap();
    let a = digibu(&["analyze", path]);
    let b = digibu(&["analyze", path]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["adjacency"], "c2");
}

#[test]
fn analyze_summary() {
    let file = pgm_file(b"P2\n2 2\n255\n0 10\n20 30\n");
    let out = digibu(&["analyze", file.path().to_str().unwrap(), "--summary"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Lipschitz constant"), "{text}");
    assert!(text.contains("bound holds"), "{text}");
}

#[test]
fn invalid_input_exits_with_1() {
    let color = pgm_file(b"P3\n1 1\n255\n0 0 0\n");
    let out = digibu(&["analyze", color.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported format"));

    let thin = pgm_file(b"P2\n1 3\n255\n1 2 3\n");
    assert_eq!(digibu(&["analyze", thin.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(digibu(&["analyze", "/nonexistent/image.pgm"]).status.code(), Some(1));
    assert_eq!(digibu(&["regularity", "--dim", "4", "--k", "2"]).status.code(), Some(1));
    assert_eq!(digibu(&["regularity", "--dim", "2", "--k", "3"]).status.code(), Some(1));
    assert_eq!(digibu(&["verify", "--scope", "everything"]).status.code(), Some(1));
    assert_eq!(digibu(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = digibu(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("regularity"));
}

#[test]
fn regularity_verdicts() {
    let out = digibu(&["regularity", "--dim", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "regular-in-window");
    assert!(v["statistics"]["pairs_examined"].as_u64().unwrap() > 0);

    let out = digibu(&["regularity", "--dim", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "violation");
    assert_eq!(v["violation"]["sigma"], serde_json::json!([[0, 0, 0], [1, 1, 0]]));
}

#[test]
fn verify_counterexample_scope() {
    let out = digibu(&["verify", "--scope", "counterexample", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_highdim_is_reproducible() {
    let a = digibu(&["verify", "--scope", "highdim", "--seed", "42"]);
    let b = digibu(&["verify", "--scope", "highdim", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let counts: Vec<u64> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["instances"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![500, 500, 200, 200, 200, 200]);
}

#[test]
fn demo_counterexample() {
    let out = digibu(&["demo-counterexample"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 26);
    assert!(values.iter().all(|r| r["c1_distance"].as_u64().unwrap() >= 2));
}
