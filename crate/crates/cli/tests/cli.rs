use std::process::Command;

use hlcert_cli::{run, run_str, CliError, InstanceFile, EXIT_ERROR, EXIT_FAILS, EXIT_OK};
use serde_json::{json, Value};

const FAILING_PAIR: &str = r#"{
  "schema": 1,
  "n": 2,
  "matrices": {
    "A": [["1/1", "0/1"], ["0/1", "0/1"]],
    "B": [[1, 0], [0, 0]]
  },
  "tasks": [{"kind": "hl-certify", "forms": ["A", "B"], "p": 0, "q": 0}]
}"#;

const MIXED: &str = r#"{
  "schema": 1,
  "n": 2,
  "matrices": {
    "A": [["1", "0"], ["0", "0"]],
    "I": [["1", "0"], ["0", "1"]],
    "H": [["2", {"re": "1", "im": "-1/2"}], [{"re": "1", "im": "1/2"}, "3"]]
  },
  "tasks": [
    {"kind": "nd", "matrix": "H"},
    {"kind": "psd-check", "matrix": "H"},
    {"kind": "mixed-disc", "matrices": ["A", "I"]},
    {"kind": "intersection", "matrices": ["A", "I"]},
    {"kind": "hl-certify", "forms": ["I"], "p": 1, "q": 0, "method": "both"},
    {"kind": "hr-certify", "forms": [], "p": 1, "q": 1, "eta": "I"},
    {"kind": "signature", "forms": []},
    {"kind": "lefschetz", "forms": [], "p": 1, "q": 1, "eta": "I"},
    {"kind": "polymatroid-axioms", "matrices": ["A", "I"]},
    {"kind": "enumerate-support", "table": {"m": 2, "values": {"[]": 0, "[1]": 1, "[2]": 1, "[1,2]": 2}}},
    {"kind": "hl-support", "matrices": ["A", "I"]}
  ]
}"#;

fn report_value(text: &str) -> (Value, i32) {
    let r = run_str(text).unwrap();
    (serde_json::from_str(&r.to_json(false)).unwrap(), r.exit_code())
}

#[test]
fn nd_of_rank_two_diagonal() {
    let text = r#"{"schema": 1, "n": 3,
        "matrices": {"A": [["1","0","0"],["0","1","0"],["0","0","0"]]},
        "tasks": [{"kind": "nd", "matrix": "A"}]}"#;
    let r = run_str(text).unwrap();
    assert_eq!(r.to_json(false), "{\"0\":{\"nd\":2}}\n");
    assert_eq!(r.exit_code(), EXIT_OK);
}

#[test]
fn failing_pair_certificate() {
    let (v, code) = report_value(FAILING_PAIR);
    assert_eq!(v, json!({"0": {"verdict": "fails", "failing_subset": [1, 2]}}));
    assert_eq!(code, EXIT_FAILS);
}

#[test]
fn empty_tasks_give_empty_report() {
    let r = run_str(r#"{"schema": 1, "n": 2, "matrices": {}, "tasks": []}"#).unwrap();
    assert_eq!(r.to_json(false), "{}\n");
    assert_eq!(r.exit_code(), EXIT_OK);
}

#[test]
fn every_task_kind_runs() {
    let (v, code) = report_value(MIXED);
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), 11);
    for (k, entry) in obj {
        assert!(entry.get("error").is_none(), "task {k}: {entry}");
    }
    assert_eq!(v["0"], json!({"nd": 2}));
    assert_eq!(v["1"]["verdict"], "holds");
    // det(H) = 6 - 5/4, trace 5
    assert_eq!(v["1"]["elementary_symmetric"], json!(["5/1", "19/4"]));
    assert_eq!(v["2"]["mixed_discriminant"], "1/2");
    assert_eq!(v["2"]["positive"], true);
    assert_eq!(v["3"]["intersection"], "1/1");
    assert_eq!(v["4"], json!({"verdict": "holds"}));
    assert_eq!(v["5"]["verdict"], "holds");
    assert_eq!(v["5"]["primitive_dim"], 3);
    assert_eq!(v["6"], json!({"signature": [1, 3, 0], "lorentzian": true}));
    assert_eq!(v["7"]["verdict"], "holds");
    assert_eq!(v["8"]["verdict"], "holds");
    assert_eq!(v["9"]["points"], json!([[1, 1]]));
    assert_eq!(v["10"]["points"], json!([[0, 2], [1, 1]]));
    assert_eq!(code, EXIT_OK);
}

#[test]
fn task_errors_do_not_abort_later_tasks() {
    let text = r#"{"schema": 1, "n": 2,
        "matrices": {"N": [["-1","0"],["0","1"]], "I": [["1","0"],["0","1"]]},
        "tasks": [
          {"kind": "nd", "matrix": "N"},
          {"kind": "hl-certify", "forms": ["I", "I", "I"], "p": 0, "q": 0},
          {"kind": "nd", "matrix": "I"}
        ]}"#;
    let (v, code) = report_value(text);
    assert!(v["0"]["error"].is_string());
    assert!(v["1"]["error"].is_string());
    assert_eq!(v["2"], json!({"nd": 2}));
    assert_eq!(code, EXIT_ERROR);
}

#[test]
fn parse_errors_carry_position() {
    let text = "{\"schema\": 1,\n \"n\": 2,\n \"matrices\": {\"A\": [[\"1\", \"0\"], [\"0\" \"1\"]]}}";
    match InstanceFile::parse(text) {
        Err(CliError::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert!(column > 30, "column {column}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn semantic_validation() {
    let cases = [
        r#"{"schema": 2, "n": 1, "matrices": {}, "tasks": []}"#,
        r#"{"schema": 1, "n": 2, "matrices": {"A": [["1"]]}, "tasks": []}"#,
        r#"{"schema": 1, "n": 2, "matrices": {"A": [["1","1"],["0","1"]]}, "tasks": []}"#,
        r#"{"schema": 1, "n": 1, "matrices": {}, "tasks": [{"kind": "nd", "matrix": "Z"}]}"#,
    ];
    for text in cases {
        assert!(matches!(InstanceFile::parse(text), Err(CliError::Invalid(_))), "{text}");
    }
    let unknown = r#"{"schema": 1, "n": 1, "matrices": {}, "tasks": [{"kind": "nd", "matrix": "A", "x": 1}]}"#;
    assert!(matches!(InstanceFile::parse(unknown), Err(CliError::Parse { .. })));
}

#[test]
fn round_trip_is_canonical() {
    for text in [FAILING_PAIR, MIXED] {
        let once = InstanceFile::parse(text).unwrap();
        let canon = once.to_json(false);
        let twice = InstanceFile::parse(&canon).unwrap();
        assert_eq!(once, twice);
        assert_eq!(canon, twice.to_json(false));
        assert_eq!(once, InstanceFile::parse(&once.to_json(true)).unwrap());
    }
    let canon = InstanceFile::parse(FAILING_PAIR).unwrap().to_json(false);
    assert!(canon.contains(r#""B":[["1/1","0/1"],["0/1","0/1"]]"#), "{canon}");
}

#[test]
fn reports_are_deterministic() {
    let file = InstanceFile::parse(MIXED).unwrap();
    let a = run(&file).to_json(true);
    let b = run(&file).to_json(true);
    assert_eq!(a, b);
}

fn hlcert(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hlcert")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn binary_run_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pair.json");
    std::fs::write(&input, FAILING_PAIR).unwrap();
    let input = input.to_str().unwrap();

    let (out, code) = hlcert(&["run", "--input", input]);
    assert_eq!(out, "{\"0\":{\"failing_subset\":[1,2],\"verdict\":\"fails\"}}\n");
    assert_eq!(code, 1);

    let (out, code) = hlcert(&["hl-certify", "--input", input, "--forms", "A", "-p", "1", "-q", "0"]);
    assert_eq!(out, "{\"0\":{\"failing_subset\":[1],\"verdict\":\"fails\"}}\n");
    assert_eq!(code, 1);

    let mixed = dir.path().join("mixed.json");
    std::fs::write(&mixed, MIXED).unwrap();
    let mixed = mixed.to_str().unwrap();
    let (out, code) =
        hlcert(&["hl-certify", "--input", mixed, "--forms", "I", "-p", "1", "-q", "0", "--method", "both"]);
    assert_eq!(out, "{\"0\":{\"verdict\":\"holds\"}}\n");
    assert_eq!(code, 0);
    let (out, code) = hlcert(&["signature", "--input", mixed]);
    assert_eq!(out, "{\"0\":{\"lorentzian\":true,\"signature\":[1,3,0]}}\n");
    assert_eq!(code, 0);
    let (out, _) = hlcert(&["mixed-disc", "--input", mixed, "--matrices", "A,I"]);
    assert!(out.contains("\"mixed_discriminant\":\"1/2\""), "{out}");
    let (out, code) = hlcert(&["hr-certify", "--input", mixed, "-p", "1", "-q", "1", "--eta", "I"]);
    assert!(out.contains("\"verdict\":\"holds\""), "{out}");
    assert_eq!(code, 0);

    let report = dir.path().join("report.json");
    let (_, code) = hlcert(&["--input", input, "--output", report.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(std::fs::read_to_string(report).unwrap().contains("fails"));

    let (_, code) = hlcert(&["run", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn binary_generate_is_seeded() {
    let args = ["generate", "--seed", "11", "--n", "3", "--ranks", "0,2,3"];
    let (a, code) = hlcert(&args);
    assert_eq!(code, 0);
    assert_eq!(a, hlcert(&args).0);
    assert_ne!(a, hlcert(&["generate", "--seed", "12", "--n", "3", "--ranks", "0,2,3"]).0);
    let file = InstanceFile::parse(&a).unwrap();
    let ranks: Vec<usize> = file.matrices.values().map(|m| m.rank()).collect();
    assert_eq!(ranks, vec![0, 2, 3]);
    assert!(file.matrices.values().all(|m| m.is_psd()));
}
