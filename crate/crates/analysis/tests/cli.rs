use std::process::Command;

use lg_analysis::batch::{ErrorKind, ResultsFile};

fn lg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lg"))
}

fn code(args: &[&str]) -> Option<i32> {
    lg().args(args).output().unwrap().status.code()
}

fn data(rel: &str) -> String {
    format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn eval_and_exit_codes() {
    let out = lg().args(["eval", "1,1,1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "1*q^-2*p^-4;-1*q^-3*p^-2;-1*q^-1*p^-2;2*q^-2;1;-1*q^-3*p^2;-1*q^-1*p^2;1*q^-2*p^4"
    );
    let out = lg().args(["eval", "--invariant", "lg11", "1,-2,1,-2"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "-1*p^-2;3;-1*p^2");

    assert_eq!(code(&["eval", "1,x"]), Some(1));
    assert_eq!(code(&["eval", "--strands", "2", "3"]), Some(1));
    assert_eq!(code(&["eval", "--strands", "13", "1"]), Some(2));
    assert_eq!(code(&["cluster", "/nonexistent.json"]), Some(1));
    assert_eq!(code(&["selftest"]), Some(0));
}

#[test]
fn batch_is_deterministic_and_isolates_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.tsv");
    let rows = std::fs::read_to_string(data("knots/upto10.tsv")).unwrap();
    let mut text: String = rows.lines().take(40).map(|l| format!("{l}\n")).collect();
    text.push_str("bad\t2\t1,x\n");
    std::fs::write(&table, text).unwrap();

    let mut outputs = vec![];
    for jobs in ["1", "3"] {
        let out = dir.path().join(format!("r{jobs}.json"));
        let status = lg()
            .args(["batch", table.to_str().unwrap(), "-o", out.to_str().unwrap()])
            .env("LG_JOBS", jobs)
            .output()
            .unwrap()
            .status;
        assert_eq!(status.code(), Some(1));
        outputs.push(std::fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let res: ResultsFile = serde_json::from_str(&outputs[0]).unwrap();
    assert_eq!(res.results.len(), 39);
    assert_eq!(res.worst_error(), Some(ErrorKind::Input));
    assert_eq!(res.results.iter().filter(|r| r.value.is_some()).count(), 38);
    assert!(res.representation_digest.len() == 64);
    assert!(!outputs[0].contains("elapsed"));

    let r = dir.path().join("r1.json");
    let out = lg().args(["report", r.to_str().unwrap(), "--mode", "full"]).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["errors"], 1);
    assert_eq!(report["symmetry"]["evaluated"], 38);
    assert!(report["cliques"]["clusters"].as_array().unwrap().is_empty());
}

#[test]
fn pd2braid_roundtrip() {
    let out = lg().args(["pd2braid", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"]).output().unwrap();
    assert!(out.status.success());
    let row = String::from_utf8(out.stdout).unwrap();
    assert_eq!(row.split('\t').nth(2), Some("-1,-1,-1"));
    let out = lg().args(["pd2braid", "X[4,1,3,2] X[2,3,1,4]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
