use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use unitri_core::fuzz::FailureRecord;

fn unitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn in_dir(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitri"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unitri"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn reduce_apply_invert() {
    let o = unitri(&["reduce", "--rank", "2", "f1 f1^-1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "e"));

    let o = unitri(&["apply", "--rank", "3", "--auto", "L(3,2)", "--word", "f3"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "f2 f3"));

    let o = unitri(&["invert", "--rank", "3", "--ut", "L(2,1)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(f1^-1, e)"));

    let o = unitri(&["invert", "--rank", "2", "--word", "f1 f2^-1"]);
    assert_eq!(stdout(&o).trim(), "f2 f1^-1");

    let o = unitri(&["invert", "--rank", "2", "--auto", "sigma tau(1)"]);
    assert_eq!(stdout(&o).trim(), "f1 -> f1; f2 -> f2 f1^-1");
}

#[test]
fn compose_in_both_representations() {
    let o = unitri(&["compose", "--rank", "3", "L(3,1)", "L(2,1)"]);
    assert_eq!(stdout(&o).trim(), "f1 -> f1; f2 -> f1 f2; f3 -> f1 f3");
    let o = unitri(&["compose", "--rank", "3", "--ut", "L(3,1)", "L(2,1)"]);
    assert_eq!(stdout(&o).trim(), "(f1, f1)");
    let o = unitri(&[
        "compose", "--rank", "3", "--ut", "L(3,1)", "L(2,1)", "--format", "json",
    ]);
    assert_eq!(
        json(&o),
        serde_json::json!({"rank": 3, "tuple": [[1], [1]]})
    );
}

#[test]
fn json_schemas() {
    let o = unitri(&[
        "reduce",
        "--rank",
        "2",
        "f1 f2 f2 f2^-1",
        "--format",
        "json",
    ]);
    assert_eq!(json(&o), serde_json::json!([1, 2]));

    let o = unitri(&["compose", "--rank", "2", "sigma", "e", "--format", "json"]);
    assert_eq!(
        json(&o),
        serde_json::json!({"rank": 2, "images": [[1], [1, 2]]})
    );

    let o = unitri(&["britton", "t (f1|e) t^-1 t", "--format", "json"]);
    assert_eq!(
        json(&o),
        serde_json::json!({"rank": 2, "head": [[], []], "tail": [[1, [[1], []]]]})
    );
}

#[test]
fn stdin_input() {
    let o = with_stdin(&["reduce", "--rank", "2", "-"], "f1 f2\n f2^-1\n");
    assert_eq!((code(&o), stdout(&o).trim()), (0, "f1"));
    let o = with_stdin(
        &["britton", "--check-trivial", "-"],
        "t (f2|f2) t^-1 (e|f2)^-1",
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("trivial"));
}

#[test]
fn input_errors_exit_2() {
    let o = unitri(&["reduce", "--rank", "1", "f2"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column 1"), "{err}");

    let o = unitri(&["reduce", "f1 ("]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("column 5"));

    assert_eq!(
        code(&unitri(&["apply", "--auto", "L(3,1)", "--word", "f1"])),
        2
    );
    assert_eq!(code(&unitri(&["fp-image", "--rank", "3", "t"])), 2);
    assert_eq!(code(&unitri(&["check-relations", "--only", "eq9"])), 2);
    assert_eq!(code(&unitri(&["fuzz", "--only", "no.such"])), 2);
    assert_eq!(code(&unitri(&["no-such-command"])), 2);
}

#[test]
fn ut_from_images() {
    let o = unitri(&["ut-from-images", "f1", "f1 f2", "f2^-1 f1 f3"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(f1, f2^-1 f1)"));
    let o = unitri(&["ut-from-images", "f2", "f1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "not unitriangular"));
    let o = unitri(&["ut-from-images", "f1", "f2 f1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(
        code(&unitri(&["ut-from-images", "--rank", "3", "f1", "f2"])),
        2
    );
}

#[test]
fn check_relations_default_passes() {
    let o = unitri(&["check-relations", "--samples", "200"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    for group in [
        "eq4", "eq5", "remark1", "commute", "hydra", "alpha", "fp", "eq7",
    ] {
        assert!(out.contains(&format!("[{group}]")), "{group}");
    }
    assert!(out.contains("[L(4,3), L(3,1)] = L(4,1)"));
}

#[test]
fn check_relations_only_eq7() {
    let o = unitri(&["check-relations", "--only", "eq7", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks
        .iter()
        .all(|c| c["group"] == "eq7" && c["passed"] == true));
    assert_eq!(v["stable_letter_sign"], -1);
}

#[test]
fn corrupted_table_exits_1() {
    let o = unitri(&["check-relations", "--corrupt-table"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  [eq4]"));
    let o = unitri(&["check-relations", "--corrupt-table", "--only", "eq5"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn britton_examples() {
    let o = unitri(&["britton", "t (f1|f1) t^-1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(e | f1)"));
    let o = unitri(&["britton", "--check-trivial", "t"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("nontrivial"));
    let o = unitri(&["britton", "t^-1 (e|f2) t"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(f2 | f2)"));
}

#[test]
fn fp_image_of_relator_is_identity() {
    let o = unitri(&["fp-image", "t (f1 f2|f1 f2) t^-1 (e|f1 f2)^-1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "(e, e, e)"));
    let o = unitri(&["fp-image", "(f1|e)"]);
    assert_eq!(stdout(&o).trim(), "(e, e, f1)");
}

#[test]
fn fuzz_is_deterministic_and_clean() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "fuzz",
        "--samples",
        "10000",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = in_dir(dir.path(), &args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let b = in_dir(
        dir.path(),
        &[
            "fuzz",
            "--samples",
            "10000",
            "--seed",
            "7",
            "--format",
            "json",
            "--jobs",
            "1",
        ],
    );
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["properties"].as_array().unwrap().len(), 13);
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(!dir.path().join("fuzz-failures.jsonl").exists());
}

#[test]
fn corpus_is_replayed_first() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.jsonl");
    let record = FailureRecord {
        property: "word.confluence".into(),
        seed: 42,
        case: "f1 f1^-1".into(),
        expected: "e".into(),
        actual: "f1".into(),
    };
    std::fs::write(&corpus, serde_json::to_string(&record).unwrap() + "\n").unwrap();
    let path = corpus.to_str().unwrap();
    let o = unitri(&["fuzz", "--samples", "5", "--corpus", path]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("replayed 1 corpus records, 0 still failing"));

    let o = unitri(&[
        "fuzz",
        "--samples",
        "5",
        "--corpus",
        path,
        "--only",
        "dsl.bytes",
    ]);
    assert!(stdout(&o).starts_with("replayed 0 corpus records"));

    std::fs::write(&corpus, "not json\n").unwrap();
    let o = unitri(&["fuzz", "--samples", "5", "--corpus", path]);
    assert_eq!(code(&o), 2);
}

#[test]
fn failure_record_round_trips() {
    let record = FailureRecord {
        property: "hnn.soundness".into(),
        seed: u64::MAX,
        case: "t (f1|f1) t^-1".into(),
        expected: "trivial".into(),
        actual: "nontrivial".into(),
    };
    let line = serde_json::to_string(&record).unwrap();
    let v: Value = serde_json::from_str(&line).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 5);
    for k in ["property", "seed", "case", "expected", "actual"] {
        assert!(keys.contains(&k));
    }
    assert_eq!(
        serde_json::from_str::<FailureRecord>(&line).unwrap(),
        record
    );
}

#[test]
fn bench_reports_throughput() {
    let o = unitri(&[
        "bench",
        "--sizes",
        "10000,100000",
        "--repeats",
        "2",
        "--format",
        "json",
    ]);
    assert!(matches!(code(&o), 0 | 1));
    let v = json(&o);
    let ms = v["measurements"].as_array().unwrap();
    assert_eq!(ms.len(), 4);
    for m in ms {
        assert!(m["letters_per_second"].as_f64().unwrap() > 0.0);
        if m["workload"] == "palindrome" {
            assert_eq!(m["reduced_length"], 0);
        }
    }
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}
