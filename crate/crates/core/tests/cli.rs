use std::path::PathBuf;
use std::process::{Command, Output};

use fullgraph::cli::{EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use fullgraph::{lookup, parse_algebra_file, serialize_algebra};

fn fullgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fullgraph"))
        .args(args)
        .output()
        .expect("spawn fullgraph")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fullgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn verify_sl2_passes() {
    let out = fullgraph(&["verify", "sl2"]);
    assert_eq!(out.status.code(), Some(EXIT_OK), "{}", stdout(&out));
    assert!(stdout(&out).contains("sl2: PASS"));
}

#[test]
fn sign_mutation_fails_theorem1_on_sl2() {
    let out = fullgraph(&[
        "--json",
        "verify",
        "sl2",
        "--theorem",
        "1",
        "--mutate-action-sign",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_CHECK_FAILED));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["theorem1"]["each_generator_is_derivation"], false);
}

#[test]
fn mutation_flag_is_hidden_from_help() {
    let out = fullgraph(&["--help"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(!stdout(&out).contains("mutate"));
}

#[test]
fn heisenberg_reports_the_extra_derivation() {
    let out = fullgraph(&["--json", "verify", "heisenberg3", "--theorem", "1"]);
    assert_eq!(out.status.code(), Some(EXIT_CHECK_FAILED));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["theorem1"]["dim_H"], 9);
    assert_eq!(report["theorem1"]["dim_DerCG"], 10);
    assert_eq!(report["theorem1"]["image_equals_DerCG"], false);
}

#[test]
fn corpus_verify_json_is_an_ordered_byte_stable_array() {
    let first = fullgraph(&["--json", "corpus-verify"]);
    let second = fullgraph(&["--json", "corpus-verify"]);
    assert_eq!(first.stdout, second.stdout);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let names: Vec<&str> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["algebra_name"].as_str().unwrap())
        .collect();
    let expected: Vec<&str> = fullgraph::catalog().iter().map(|e| e.name).collect();
    assert_eq!(names, expected);
    for r in reports.as_array().unwrap() {
        let name = r["algebra_name"].as_str().unwrap();
        assert_eq!(r["pass"], name != "heisenberg3", "{name}");
        assert_eq!(r["lemma"]["match"], true, "{name}");
    }
    // exit status reflects the heisenberg3 counterexample
    assert_eq!(first.status.code(), Some(EXIT_CHECK_FAILED));
}

#[test]
fn jacobi_violation_in_file_is_a_usage_error_naming_the_triple() {
    let path = temp_file(
        "bad.json",
        r#"{"dim":3,"brackets":[
            {"i":0,"j":1,"result":[{"k":2,"coeff":"1"}]},
            {"i":0,"j":2,"result":[{"k":0,"coeff":"1"}]}]}"#,
    );
    let out = fullgraph(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&out).contains("(0, 1, 2)"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn malformed_files_are_usage_errors() {
    let cases = [
        ("syntax.json", r#"{"dim": 2, "brackets": ["#),
        (
            "rational.json",
            r#"{"dim":2,"brackets":[{"i":0,"j":1,"result":[{"k":1,"coeff":"1/0"}]}]}"#,
        ),
        (
            "order.json",
            r#"{"dim":2,"brackets":[{"i":1,"j":0,"result":[{"k":1,"coeff":"1"}]}]}"#,
        ),
        (
            "range.json",
            r#"{"dim":2,"brackets":[{"i":0,"j":1,"result":[{"k":5,"coeff":"1"}]}]}"#,
        ),
        ("unknown.json", r#"{"dim":2,"brackets":[],"extra":true}"#),
    ];
    for (name, body) in cases {
        let path = temp_file(name, body);
        let out = fullgraph(&["info", "--file", path.to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(EXIT_USAGE),
            "{name}: {}",
            stderr(&out)
        );
        assert!(stderr(&out).starts_with("error:"), "{name}");
    }
}

#[test]
fn unknown_algebra_and_bad_arguments_exit_2() {
    assert_eq!(
        fullgraph(&["info", "no-such-algebra"]).status.code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(
        fullgraph(&["verify", "sl2", "--theorem", "3"])
            .status
            .code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(fullgraph(&["info"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(fullgraph(&[]).status.code(), Some(EXIT_USAGE));
}

#[test]
fn file_round_trip_matches_catalog_results() {
    for entry in fullgraph::catalog() {
        let text = serialize_algebra(&entry.algebra);
        let parsed = parse_algebra_file(&text).unwrap();
        assert_eq!(parsed, lookup(entry.name).unwrap(), "{}", entry.name);

        let path = temp_file(
            &format!("{}.json", entry.name.replace(['(', ')'], "_")),
            &text,
        );
        let from_file = fullgraph(&["--json", "info", "--file", path.to_str().unwrap()]);
        let from_name = fullgraph(&["--json", "info", entry.name]);
        assert_eq!(from_file.status.code(), Some(EXIT_OK));
        let a: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
        let mut b: serde_json::Value = serde_json::from_str(&stdout(&from_name)).unwrap();
        b["algebra"] = a["algebra"].clone();
        assert_eq!(a, b, "{}", entry.name);
    }
}

#[test]
fn info_reports_the_oracle_dimensions() {
    let out = fullgraph(&["--json", "info", "heisenberg3"]);
    let info: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(info["der_dim"], 6);
    assert_eq!(info["d_space_dim"], 3);
    assert_eq!(info["d_center_dim"], 0);
}
