use std::path::PathBuf;

use qlaws::cli::{run, Outcome};
use serde_json::Value;

fn qlaws(args: &[&str]) -> Outcome {
    run(std::iter::once("qlaws").chain(args.iter().copied()))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qlaws-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn delta_law_over_two_passes() {
    let out = qlaws(&["check", "law", "--quantaloid", "builtin:two", "--monad", "powerset", "--law", "delta", "--sizes", "1,2", "--seed", "7"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("law.c"));
    assert!(out.stdout.contains("0 failed"));
}

#[test]
fn broken_quantaloid_reports_associativity() {
    let out = qlaws(&["check", "quantaloid", &data("broken.json"), "--format", "json"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    let assoc = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "quantaloid.associativity").unwrap();
    assert_eq!(assoc["status"], "fail");
    assert!(assoc["witness"].as_str().unwrap().contains("u=a v=a w=a"));
}

#[test]
fn enumeration_prints_the_preorder_count() {
    let out = qlaws(&["enumerate", "algebras", "--quantaloid", "builtin:two", "--monad", "identity", "--law", "identity", "--size", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("count = 29"), "{}", out.stdout);
    let v = json(&qlaws(&["enumerate", "algebras", "--law", "identity", "--size", "2", "--format", "json"]));
    assert_eq!(v["output"]["count"], 4);
}

#[test]
fn schema_and_resource_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["check", "quantaloid", "--quantaloid", "builtin:nope"],
        &["check", "law", "--law", "nope"],
        &["check", "quantaloid", "/nonexistent/q.json"],
        &["check", "law", "--monad", "list", "--law", "tensor", "--sizes", "2", "--budget", "3"],
    ];
    for args in cases {
        let out = qlaws(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(out.stderr.starts_with("error:"), "{args:?}: {}", out.stderr);
    }
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"objects\": [").unwrap();
    assert_eq!(qlaws(&["check", "quantaloid", bad.to_str().unwrap()]).code, 2);
}

#[test]
fn missing_composite_names_the_triple() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("broken.json")).unwrap()).unwrap();
    v["compose"].as_array_mut().unwrap().remove(5);
    let path = scratch("missing.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = qlaws(&["check", "quantaloid", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("compose/*/*/*/a/a"), "{}", out.stderr);
}

#[test]
fn out_dash_streams_the_full_report() {
    let out = qlaws(&["check", "law", "--monad", "list", "--law", "tensor", "--out", "-"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert!(v.get("timings_ms").is_some());
    assert_eq!(v["args"][0], "check");
    assert!(!v["args"].as_array().unwrap().iter().any(|a| a == "--out"));
}

#[test]
fn json_reports_round_trip() {
    let out = qlaws(&["check", "extension", "--monad", "powerset", "--extension", "delta", "--format", "json"]);
    let report: qlaws::report::Report = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report.to_canonical_json() + "\n", out.stdout);
}

#[test]
fn replay_reproduces_failures() {
    let path = scratch("fail.json");
    let out = qlaws(&["check", "hofmann", "--quantaloid", "builtin:two", "--monad", "powerset", "--theory", "top", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let again = qlaws(&["--replay", path.to_str().unwrap()]);
    assert_eq!(again.code, 0, "{}", again.stdout);
    assert!(again.stdout.contains("replay.same"));
    assert!(again.stdout.contains("hofmann.4 reproduces"), "{}", again.stdout);

    let mut tampered: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    tampered["checks"][0]["status"] = "fail".into();
    std::fs::write(&path, tampered.to_string()).unwrap();
    assert_eq!(qlaws(&["--replay", path.to_str().unwrap()]).code, 1);
}

#[test]
fn change_of_base_round_trips_through_the_diagonal() {
    let src = scratch("metric.json");
    std::fs::write(
        &src,
        r#"{"quantaloid": "builtin:add_chain:3", "array": ["*", "*"], "alpha": [[0, 0, "0"], [0, 1, "1"], [1, 0, "2"], [1, 1, "0"]]}"#,
    )
    .unwrap();
    let mid = scratch("diag.json");
    let up = qlaws(&["apply", "change-of-base", "--hom", "iota", "--input", src.to_str().unwrap(), "--emit", mid.to_str().unwrap()]);
    assert_eq!(up.code, 0, "{}{}", up.stdout, up.stderr);
    for hom in ["gamma", "delta"] {
        let down = qlaws(&["apply", "change-of-base", "--hom", hom, "--input", mid.to_str().unwrap(), "--emit", "-"]);
        assert_eq!(down.code, 0, "{}", down.stderr);
        let v = json(&down);
        assert_eq!(v["quantaloid"], "builtin:add_chain:3");
        let orig: Value = serde_json::from_str(&std::fs::read_to_string(&src).unwrap()).unwrap();
        let norm = |a: &Value| -> Vec<String> {
            let mut es: Vec<String> = a.as_array().unwrap().iter().map(|e| format!("{}/{}/{}", e[0], e[1].as_array().map_or(e[1].clone(), |u| u[0].clone()), e[2])).collect();
            es.sort();
            es
        };
        assert_eq!(norm(&v["alpha"]), norm(&orig["alpha"]), "{hom}");
    }
}

#[test]
fn gamma_reads_off_a_partial_metric() {
    let out = qlaws(&["apply", "change-of-base", "--hom", "gamma", "--input", &data("pmet.json"), "--emit", "-"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    // d(p, q) = 2 − 1 and d(q, p) = 1 − 0
    let entry = |x: u64, y: u64| v["alpha"].as_array().unwrap().iter().find(|e| e[0] == x && e[1][0] == y).map(|e| e[2].clone());
    assert_eq!(entry(0, 1), Some("1".into()));
    assert_eq!(entry(1, 0), Some("1".into()));
    assert!(out.stderr.contains("alg.g"));
}

#[test]
fn counit_sends_compact_algebras_to_preorders() {
    let path = scratch("sierpinski.json");
    std::fs::write(
        &path,
        r#"{"quantaloid": "builtin:two", "monad": "powerset", "array": ["*", "*"],
            "alpha": [[0, [0], "1"], [0, [0, 1], "1"], [1, [1], "1"], [1, [0], "1"], [1, [0, 1], "1"]]}"#,
    )
    .unwrap();
    let out = qlaws(&["apply", "algebraic", "--morphism", "counit", "--input", path.to_str().unwrap(), "--emit", "-"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert_eq!(json(&out)["monad"], "identity");
}

#[test]
fn derive_commands_emit_tables() {
    let out = qlaws(&["derive", "theory", "--monad", "ultrafilter", "--law", "beta", "--emit", "-"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let xi = json(&out);
    let path = scratch("xi.json");
    std::fs::write(&path, xi.to_string()).unwrap();
    let back = qlaws(&["check", "hofmann", "--monad", "ultrafilter", "--theory", path.to_str().unwrap()]);
    assert_eq!(back.code, 0, "{}{}", back.stdout, back.stderr);
    // the θ unit law fails for δ, but the table is still emitted
    let delta = qlaws(&["derive", "theory", "--monad", "powerset", "--law", "delta", "--emit", "-"]);
    assert_eq!(delta.code, 1);
    assert!(delta.stderr.contains("induced.theta-unit"));
    assert!(json(&delta)["entries"].is_array());
}

#[test]
fn help_exits_zero() {
    let out = qlaws(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("enumerate"));
}
