use std::io::Write;
use std::process::Command;

use hypermatch_cli::{run, Outcome};
use serde_json::Value;
use tempfile::NamedTempFile;

fn call(args: &[&str]) -> Outcome {
    run(std::iter::once("hypermatch").chain(args.iter().copied()))
}

fn ok_json(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, 0, "{args:?}: {out:?}");
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const C5: &str = "# five-cycle\n5 2\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn gen_h_s_has_49_edges() {
    let out = call(&["gen", "hs", "--n", "9", "--k", "3", "--s", "3"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("9 3"));
    assert_eq!(lines.count(), 49);
    let out = call(&["gen", "hprime", "--n", "6", "--k", "3"]);
    assert_eq!(out.stdout.lines().count(), 11);
    let out = call(&["gen", "complete", "--n", "5", "--k", "2"]);
    assert_eq!(out.stdout.lines().count(), 11);
}

#[test]
fn fractional_and_integer_matchings_on_c5() {
    let f = file(C5);
    let path = f.path().to_str().unwrap();
    assert_eq!(
        ok_json(&["duality", path]),
        serde_json::json!({"primal": "5/2", "dual": "5/2", "equal": true})
    );
    let v = ok_json(&["match", "--frac", path]);
    assert_eq!(v["size"], "5/2");
    assert_eq!(v["weights"].as_array().unwrap().len(), 5);
    let v = ok_json(&["match", "--int", path]);
    assert_eq!(
        (v["size"].as_u64(), v["optimal"].as_bool()),
        (Some(2), Some(true))
    );
    let v = ok_json(&["match", "--int", path, "--target", "3"]);
    assert_eq!(v["target_met"], false);
    let v = ok_json(&["cover", path]);
    assert_eq!(v["size"], "5/2");
    assert_eq!(v["weights"]["3"], "1/2");
}

#[test]
fn transform_reports_feasibility() {
    let g = call(&["gen", "complete", "--n", "6", "--k", "3"]).stdout;
    let f = file(&g);
    let path = f.path().to_str().unwrap();
    let weights = "1/5,2/5,2/5,2/5,2/5,2/5";
    let v = ok_json(&["transform", path, "--l", "0", "--weights", weights]);
    assert_eq!(v["input_size"], "11/5");
    assert_eq!(v["link_weight"], "1/5");
    assert_eq!(v["weights"]["1"], "1/2");
    assert_eq!(v["size"], "5/2");
    assert_eq!(v["feasible"], true);
    // the uniform minimum cover puts exactly 1/k on L
    let out = call(&["transform", path, "--l", "0"]);
    assert_eq!(out.code, 1);
}

#[test]
fn baranyai_and_cross_edges() {
    let v = ok_json(&["baranyai", "--n", "6", "--l", "3"]);
    let matchings = v.as_array().unwrap();
    assert_eq!(matchings.len(), 10);
    assert!(matchings.iter().all(|m| m.as_array().unwrap().len() == 2));
    let v = ok_json(&[
        "crossedges",
        "--n",
        "8",
        "--k",
        "3",
        "--l",
        "2",
        "--s-size",
        "4",
        "--eta",
        "1/2",
    ]);
    let t = v["target"].as_u64().unwrap();
    assert!(v["per_vertex_counts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.as_u64() == Some(t)));
}

#[test]
fn bounds_and_roots() {
    let v = ok_json(&[
        "bounds",
        "--formula",
        "thm14_m0",
        "--k",
        "3",
        "--d",
        "0",
        "--n",
        "10",
        "--s",
        "2",
    ]);
    assert_eq!(v["absolute"], "37/1");
    let v = ok_json(&["bounds", "--formula", "conj11", "--k", "3", "--d", "1"]);
    assert_eq!(v["coefficient"], "5/9");
    assert!(v.get("absolute").is_none());
    let v = ok_json(&[
        "bounds",
        "--formula",
        "conj12",
        "--k",
        "3",
        "--d",
        "1",
        "--a",
        "1/3",
    ]);
    assert_eq!(v["coefficient"], "5/9");
    let v = ok_json(&["ak", "--k", "4"]);
    assert!((v["k_a_k"].as_f64().unwrap() - 0.567).abs() < 1e-3);
}

#[test]
fn thresholds() {
    let v = ok_json(&[
        "threshold",
        "m",
        "--k",
        "2",
        "--n",
        "5",
        "--d",
        "0",
        "--s",
        "2",
    ]);
    assert_eq!(v["value"], 5);
    assert_eq!(v["witness"], "5 2\n0 1\n0 2\n0 3\n0 4\n");
    assert!(v["checked_count"].as_u64().unwrap() > 0);
    let v = ok_json(&[
        "threshold",
        "f",
        "--k",
        "2",
        "--n",
        "4",
        "--d",
        "0",
        "--s",
        "2",
        "--workers",
        "2",
    ]);
    assert_eq!(v["value"], 4);
    let v = ok_json(&[
        "threshold",
        "f",
        "--k",
        "2",
        "--n",
        "5",
        "--d",
        "0",
        "--s",
        "1",
        "--frac-target",
        "3/2",
    ]);
    assert!(v["value"].as_u64().unwrap() >= 1);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let out = call(&[
        "threshold",
        "m",
        "--k",
        "3",
        "--n",
        "7",
        "--d",
        "0",
        "--s",
        "2",
    ]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"], "infeasible");
    let out = call(&["bounds", "--formula", "thm12", "--k", "4", "--d", "2"]);
    assert_eq!(out.code, 1);
    let out = call(&["bounds", "--formula", "nope", "--k", "4", "--d", "1"]);
    assert_eq!(out.code, 1);
    let out = call(&["ak", "--k", "2"]);
    assert_eq!(out.code, 1);
    let out = call(&[
        "crossedges",
        "--n",
        "4",
        "--k",
        "4",
        "--l",
        "4",
        "--s-size",
        "4",
        "--eta",
        "1/2",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"], "capacity_exceeded");
    let out = call(&["duality", "/nonexistent/graph.txt"]);
    assert_eq!(out.code, 1);
    let bad = file("3 2\n0 1\n0 7\n");
    let out = call(&["cover", bad.path().to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"], "vertex_out_of_range");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["match", "x.txt"],
        vec!["match", "--frac", "--int", "x.txt"],
        vec![
            "bounds",
            "--formula",
            "eq1",
            "--k",
            "3",
            "--d",
            "1",
            "--s",
            "1",
            "--a",
            "1/3",
        ],
        vec!["gen", "hs", "--n", "9", "--k", "3"],
        vec!["ak", "--k", "4", "--tol", "zero"],
        vec!["frobnicate"],
        vec!["baranyai", "--n", "4", "--l", "2", "--extra", "1"],
    ] {
        let out = call(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty() && !out.stderr.is_empty());
    }
    let out = call(&["--version"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("0.1.0"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hypermatch");
    let status = Command::new(bin).args(["ak", "--k", "3"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = Command::new(bin).args(["ak"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin).args(["ak", "--k", "2"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
}
