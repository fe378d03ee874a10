use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

fn quiverkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_zigzag() {
    let o = quiverkit(&["classify", path_str(&fixture("zigzag"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json_out(&o),
        json!({"star": false, "dynkin": "A_inf", "sourced": false, "sinked": false})
    );
}

#[test]
fn corrupted_arrow_is_a_pointered_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(fixture("comb")).unwrap().replace(
        "\"to\": \"c1\" },\n      { \"id\": \"b\"",
        "\"to\": 7 },\n      { \"id\": \"b\"",
    );
    std::fs::write(&bad, text).unwrap();
    let o = quiverkit(&["classify", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("core.arrows[0].to"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_presentation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = dir.path().join("cycle.json");
    std::fs::write(
        &cyc,
        r#"{"core": {"vertices": ["a", "b"], "arrows": [{"id": "x", "from": "a", "to": "b"}, {"id": "y", "from": "b", "to": "a"}]}}"#,
    )
    .unwrap();
    let o = quiverkit(&["validate", path_str(&cyc)]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!(v["valid"], json!(false));
    assert_eq!(v["violations"][0]["kind"], json!("directed_cycle"));

    let o = quiverkit(&["validate", path_str(&fixture("comb"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o), json!({"valid": true, "violations": []}));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quiverkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quiverkit(&["knit", path_str(&fixture("ray"))]).status.code(), Some(2));
    assert_eq!(quiverkit(&["classify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(quiverkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn made_reps_reingest() {
    let dir = tempfile::tempdir().unwrap();
    let q = fixture("example2");
    let mut files = Vec::new();
    let cases: [&[&str]; 4] = [
        &["--make", "proj", "--vertex", "0"],
        &["--make", "inj", "--vertex", "t0.2"],
        &["--make", "simple", "--vertex", "t1.3"],
        &["--make", "walk", "--from", "tail:1", "--to", "tail:0"],
    ];
    for (i, extra) in cases.iter().enumerate() {
        let mut args = vec!["rep", path_str(&q)];
        args.extend_from_slice(extra);
        let o = quiverkit(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let f = dir.path().join(format!("m{i}.json"));
        std::fs::write(&f, &o.stdout).unwrap();
        let s = quiverkit(&["status", path_str(&q), path_str(&f)]);
        assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
        let h = quiverkit(&["hom", path_str(&q), path_str(&f), path_str(&f)]);
        assert_eq!(json_out(&h)["dim"], json!(1), "End of case {i}");
        files.push((f, json_out(&s)));
    }
    // Projectives are fp; the walk running off along both tails is not in rrep.
    assert_eq!(files[0].1["fp"], json!(true));
    assert_eq!(files[3].1["in_rrep"], json!(false));
}

#[test]
fn hom_between_zigzag_members() {
    let dir = tempfile::tempdir().unwrap();
    let q = fixture("zigzag");
    let make = |from: &str, name: &str| {
        let o = quiverkit(&["rep", path_str(&q), "--make", "walk", "--from", from, "--to", "tail:0"]);
        let f = dir.path().join(name);
        std::fs::write(&f, &o.stdout).unwrap();
        f
    };
    let m0 = make("0", "m0.json");
    let m2 = make("t0.2", "m2.json");
    let dim =
        |a: &Path, b: &Path| json_out(&quiverkit(&["hom", path_str(&q), path_str(a), path_str(b)]))["dim"].clone();
    assert_eq!(dim(&m2, &m0), json!(1));
    assert_eq!(dim(&m0, &m2), json!(0));
}

#[test]
fn verify_oracle_five_is_clean() {
    let o = quiverkit(&["verify", "oracle", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["violations"], json!([]));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "almost_split_factorization"));
}

#[test]
fn verify_fixtures_is_clean() {
    let o = quiverkit(&["verify", "fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["violations"], json!([]));
}

#[test]
fn chain_and_dot() {
    let q = fixture("zigzag");
    let o = quiverkit(&["chain", path_str(&q), "--from", "0", "--to", "tail:0", "--radius", "8"]);
    assert_eq!(
        json_out(&o)["nodes"],
        json!([
            "t0.4..t0.inf",
            "t0.2..t0.inf",
            "0..t0.inf",
            "t0.1..t0.inf",
            "t0.3..t0.inf"
        ])
    );
    let d = quiverkit(&[
        "export",
        "dot",
        "chain",
        path_str(&q),
        "--from",
        "0",
        "--to",
        "tail:0",
        "--radius",
        "8",
    ]);
    let text = String::from_utf8(d.stdout).unwrap();
    assert!(text.starts_with("digraph \"chain\" {"));
    assert_eq!(text.matches("->").count(), 4);

    let w = quiverkit(&["export", "dot", "wing", "--lo", "-1", "--hi", "1"]);
    assert_eq!(String::from_utf8(w.stdout).unwrap().matches("->").count(), 6);
    assert_eq!(
        quiverkit(&["export", "dot", "wing", "--lo", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn knit_a3_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("a3.json");
    std::fs::write(
        &f,
        r#"{"core": {"vertices": ["1", "2", "3"], "arrows": [{"id": "a", "from": "1", "to": "2"}, {"id": "b", "from": "2", "to": "3"}]}}"#,
    )
    .unwrap();
    let o = quiverkit(&["knit", path_str(&f), "--depth", "5", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
}

#[test]
fn output_is_deterministic() {
    let q = fixture("figure1-star");
    let args = ["knit", path_str(&q), "--depth", "3", "--radius", "4", "--preinjective"];
    let a = quiverkit(&args);
    let b = quiverkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn in_process_run_matches_binary() {
    let q = fixture("ray");
    let r = quiverkit_cli::run(["quiverkit", "inventory", path_str(&q)]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout.as_bytes(),
        quiverkit(&["inventory", path_str(&q)]).stdout.as_slice()
    );
}
