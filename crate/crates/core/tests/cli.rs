use std::process::{Command, Output};

use serde_json::Value;

fn spliq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spliq"))
        .args(args)
        .env_remove("SPLIQ_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = spliq(&full);
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), doc)
}

fn text(args: &[&str]) -> (i32, String) {
    let out = spliq(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn quat(x0: &str, x1: &str, x2: &str, x3: &str) -> Value {
    serde_json::json!({ "x0": x0, "x1": x1, "x2": x2, "x3": x3 })
}

#[test]
fn spectrum_document_shape() {
    let (code, doc) = json(&["spectrum", "[[1,i],[j,k]]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["version"], "1");
    assert_eq!(doc["command"], "spectrum");
    assert_eq!(doc["inputs"]["matrix"], "[[1,i],[j,k]]");
    assert_eq!(doc["complete"], true);
    assert!(doc["timing_ms"].is_number());
    let result = &doc["result"];
    assert_eq!(result["completeness"]["status"], "complete");
    for key in ["matrix", "eigenvalues", "families", "solves"] {
        assert!(!result[key].is_null(), "missing {key}");
    }
    let eigenvalues = result["eigenvalues"].as_array().unwrap();
    assert_eq!(eigenvalues.len(), 1);
    assert_eq!(eigenvalues[0]["value"], quat("1/1", "0/1", "0/1", "1/1"));
    let shapes: Vec<&str> = eigenvalues[0]["eigenvectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["shape"].as_str().unwrap())
        .collect();
    assert_eq!(shapes, vec!["(1, x)", "(x, 1)"]);
    for sample in doc["samples"].as_array().unwrap() {
        assert_eq!(sample["eigenvalue"], quat("1/1", "0/1", "0/1", "1/1"));
    }
}

#[test]
fn empty_spectrum_text() {
    let (code, out) = text(&["spectrum", "[[1,1],[-3-i-j-k,1]]"]);
    assert_eq!(code, 0);
    assert!(out.contains("left spectrum: empty"), "{out}");
}

#[test]
fn quadratic_with_one_parameter_family() {
    let (code, doc) = json(&["solve-quadratic", "1+k", "-1-i+j+k", "0"]);
    assert_eq!(code, 0);
    let result = &doc["result"];
    assert_eq!(result["kind"], "affine");
    assert_eq!(result["base"], quat("0/1", "0/1", "0/1", "0/1"));
    assert_eq!(result["basis"].as_array().unwrap().len(), 1);
    assert_eq!(result["trace"]["path"]["kind"], "divisors");
    let (_, out) = text(&["solve-quadratic", "1+k", "-1-i+j+k", "0"]);
    assert!(out.contains("companion: -4x^3"), "{out}");
}

#[test]
fn surd_solutions_are_exact() {
    let (code, doc) = json(&["solve-quadratic", "1", "i", "2+j"]);
    assert_eq!(code, 0);
    let points = doc["result"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0]["x1"], "-1/2+1/2*sqrt(13)");
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let out = spliq(&["spectrum", "[[1,i]"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 5"), "{err}");
    assert_eq!(spliq(&["sqrt", "1+"]).status.code(), Some(1));
    assert_eq!(spliq(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn unresolved_pieces_exit_with_code_two() {
    let (code, doc) = json(&["solve-quadratic", "1", "1+i", "1+j"]);
    assert_eq!(code, 2);
    assert_eq!(doc["complete"], false);
    let out = spliq(&["solve-quadratic", "1", "1+i", "1+j"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("unresolved"));
}

#[test]
fn seeds_make_samples_reproducible() {
    let args = ["--samples", "5", "solve-quadratic", "1+k", "-1-i+j+k", "0"];
    let with_seed = |seed: &str| {
        let mut full = vec!["--seed", seed];
        full.extend_from_slice(&args);
        json(&full).1["samples"].clone()
    };
    assert_eq!(with_seed("17"), with_seed("17"));
    assert_ne!(with_seed("17"), with_seed("18"));
    assert_eq!(with_seed("1"), json(&args).1["samples"]);

    let mut full = vec!["--json"];
    full.extend_from_slice(&args);
    let from_env = Command::new(env!("CARGO_BIN_EXE_spliq"))
        .args(&full)
        .env("SPLIQ_SEED", "17")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(doc["samples"], with_seed("17"));
}

#[test]
fn verify_reports_eigenpairs() {
    let (code, doc) = json(&["verify", "[[1,i],[j,k]]", "1+k", "1,j"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["eigenpair"], true);
    let (_, doc) = json(&["verify", "[[1,i],[j,k]]", "1", "1,j"]);
    assert_eq!(doc["result"]["eigenpair"], false);
}

#[test]
fn adjoint_of_j_identity() {
    let (code, doc) = json(&["adjoint", "[[j,0],[0,j]]"]);
    assert_eq!(code, 0);
    let rows = doc["result"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (r, row) in rows.iter().enumerate() {
        for (c, cell) in row.as_array().unwrap().iter().enumerate() {
            let expected = if (r + 2) % 4 == c { "1/1" } else { "0/1" };
            assert_eq!(cell["re"], expected);
            assert_eq!(cell["im"], "0/1");
        }
    }
}

#[test]
fn square_roots() {
    let (code, doc) = json(&["sqrt", "2i"]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["points"],
        serde_json::json!([quat("1/1", "1/1", "0/1", "0/1"), quat("-1/1", "-1/1", "0/1", "0/1")])
    );
    let (_, doc) = json(&["sqrt", "1"]);
    assert_eq!(doc["result"]["kind"], "union");
}

#[test]
fn oracle_agrees_on_degenerate_example() {
    let (code, doc) = json(&["--oracle", "solve-quadratic", "1+k", "-1-k", "0"]);
    assert_eq!(code, 0);
    let oracle = &doc["oracle"];
    assert_eq!(oracle["grid"], "-2:2:1/2");
    assert_eq!(oracle["agreement"], true);
    assert!(oracle["hits"].as_u64().unwrap() > 0);
    assert_eq!(oracle["missing_from_result"], serde_json::json!([]));
    let (code, doc) = json(&["--oracle", "--grid", "-1:1:1", "solve-linear", "1+k", "1+k"]);
    assert_eq!(code, 0);
    assert_eq!(doc["oracle"]["grid"], "-1:1:1");
    assert_eq!(doc["oracle"]["agreement"], true);
}

#[test]
fn help_exits_cleanly() {
    let (code, out) = text(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("spectrum"));
}
