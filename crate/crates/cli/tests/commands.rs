use std::io::Write;
use std::process::{Command, Output};

use extfinite_cli::{exit, Report};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extfinite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, serde_json::Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = bin(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    (report, value, out.status.code().unwrap())
}

fn matrix_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn round_trips(r: &Report) {
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn classify_families_and_matrices() {
    let (r, v, code) = json(&["classify", "--family", "qext"]);
    assert_eq!(code, exit::OK);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["verdict"]["spectral"]["class"], "EQUAL_TWO");
    assert_eq!(v["verdict"]["conclusion"], "EXT_FINITE_EXISTS");
    round_trips(&r);

    let (_, v, _) = json(&["classify", "--family", "dnak", "--rank", "4"]);
    assert_eq!(v["verdict"]["conclusion"], "EXT_FINITE_EXISTS");

    for (m, class) in [("[[0,1],[1,0]]", "BELOW_TWO"), ("[[0,3],[3,0]]", "ABOVE_TWO")] {
        let f = matrix_file(m);
        let (r, v, code) = json(&["classify", "--matrix", f.path().to_str().unwrap()]);
        assert_eq!(code, exit::OK);
        assert_eq!(v["verdict"]["spectral"]["class"], class);
        assert_eq!(v["verdict"]["conclusion"], "NONE_EXIST");
        round_trips(&r);
    }
}

#[test]
fn classify_accepts_the_wire_form() {
    let f = matrix_file(r#"{"rows":1,"cols":1,"entries":[["3"]]}"#);
    let (_, v, _) = json(&["classify", "--matrix", f.path().to_str().unwrap()]);
    assert_eq!(v["verdict"]["spectral"]["class"], "ABOVE_TWO");
}

#[test]
fn text_and_json_agree_on_the_verdict() {
    let f = matrix_file("[[1,1,1],[1,0,1],[1,1,0]]");
    let p = f.path().to_str().unwrap();
    let (_, v, _) = json(&["classify", "--matrix", p]);
    let text = String::from_utf8(bin(&["classify", "--matrix", p]).stdout).unwrap();
    let conclusion = v["verdict"]["conclusion"].as_str().unwrap();
    assert!(text.contains(&format!("conclusion: {conclusion}")), "{text}");
    assert!(text.contains("class: ABOVE_TWO"));
}

#[test]
fn input_errors_exit_2_and_hypotheses_exit_3() {
    let bad = matrix_file("[[0,1],[1]]");
    let out = bin(&["classify", "--matrix", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let junk = matrix_file("not json");
    let out = bin(&["classify", "--matrix", junk.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::INPUT));

    let out = bin(&["classify", "--matrix", "/nonexistent/e.json"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));

    for (m, word) in [("[[0,1],[2,0]]", "symmetric"), ("[[1,0],[0,1]]", "reducible")] {
        let f = matrix_file(m);
        let out = bin(&["classify", "--matrix", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(exit::HYPOTHESIS), "{m}");
        let err = String::from_utf8_lossy(&out.stderr).to_string();
        assert!(err.contains("hypothesis") && err.contains(word), "{err}");
    }

    let out = bin(&["orbit", "--family", "qext", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
    let out = bin(&["orbit", "--family", "qext", "--lambda", "q^"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
    let out = bin(&["orbit", "--family", "dnak", "--lambda", "q"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
    let out = bin(&["orbit", "--family", "qext", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
    let out = bin(&["verify", "--suite", "nothing"]);
    assert_eq!(out.status.code(), Some(exit::INPUT));
}

#[test]
fn orbit_examples() {
    let (r, v, code) = json(&["orbit", "--family", "qext", "--lambda", "q", "--steps", "4"]);
    assert_eq!(code, exit::OK);
    let params: Vec<&str> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["parameter"].as_str().unwrap())
        .collect();
    assert_eq!(params, ["q", "1", "1/q", "1/q^2", "1/q^3"]);
    assert!(v["steps"].as_array().unwrap().iter().all(|s| s["dim"] == 2));
    round_trips(&r);

    let (_, v, _) = json(&["orbit", "--family", "dnak", "--rank", "2", "--lambda", "1", "--steps", "3"]);
    for s in v["steps"].as_array().unwrap() {
        assert_eq!(s["dim"], 4);
        assert_eq!(s["dim_vector"], serde_json::json!({"t": [1, 1], "s": [1, 1]}));
    }

    let (_, v, _) = json(&["orbit", "--family", "qext", "--simple", "--steps", "3"]);
    let dims: Vec<u64> = v["steps"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 5, 7]);
    assert!(v["steps"].as_array().unwrap()[1..].iter().all(|s| s["x_check"] == true));
}

#[test]
fn ext_table_examples() {
    let (r, v, code) = json(&["ext-table", "--family", "qext", "--lambda", "q", "--max-k", "6"]);
    assert_eq!(code, exit::OK);
    let primary: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["primary"].as_u64().unwrap()).collect();
    assert_eq!(primary, [1, 0, 0, 0, 0, 0]);
    assert_eq!(v["consistent"], true);
    round_trips(&r);

    let (_, v, _) = json(&["ext-table", "--family", "dnak", "--rank", "3", "--lambda", "q", "--max-k", "5"]);
    assert!(v["rows"].as_array().unwrap()[1..].iter().all(|r| r["primary"] == 0 && r["oracle"] == 0));

    for (target, expected) in [("q^2", 0), ("1", 1), ("q", 1), ("q^-3", 0)] {
        let (_, v, _) = json(&["ext-table", "--lambda", "q", "--target-lambda", target, "--max-k", "1"]);
        assert_eq!(v["rows"][0]["primary"], expected, "target {target}");
    }
}

#[test]
fn cheb_examples() {
    let (r, v, _) = json(&["cheb", "--poly", "4"]);
    assert_eq!(v["poly"]["display"], "x^4 - 3*x^2 + 1");
    assert_eq!(v["poly"]["coefficients"], serde_json::json!(["1", "0", "-3", "0", "1"]));
    round_trips(&r);

    let (_, v, _) = json(&["cheb", "--rows", "1,-1", "--from", "1", "--to", "12"]);
    let rows = v["rows"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0], serde_json::json!(["1", "-1"]));
    assert_eq!(rows[3], serde_json::json!(["-1", "-1"]));
    assert_eq!(rows[0], rows[6]);

    let (r, v, _) = json(&["cheb", "--matrix", "path2", "--detect-period"]);
    assert_eq!(v["matrix"]["periodicity"]["period"], 6);
    round_trips(&r);
    let (_, v, _) = json(&["cheb", "--matrix", "path5", "--detect-period", "--period-bound", "16"]);
    assert_eq!(v["matrix"]["periodicity"]["period"], 12);
    let f = matrix_file("[[3]]");
    let (_, v, _) = json(&["cheb", "--matrix", f.path().to_str().unwrap(), "--detect-period"]);
    assert!(v["matrix"]["periodicity"].is_null());
}

#[test]
fn verify_writes_to_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin(&[
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
        "verify",
        "--suite",
        "chebyshev",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(exit::OK));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: Report = serde_json::from_str(&text).unwrap();
    let Report::Verify(s) = &r else { panic!("{r:?}") };
    assert_eq!(s.seed, 7);
    assert_eq!(s.schema, 1);
    assert!(s.passed);
    assert!(s.checks.iter().any(|c| c.id == "chebyshev.golden_rows"));
    round_trips(&r);
}
