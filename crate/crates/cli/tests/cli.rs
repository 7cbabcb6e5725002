use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_effrel"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn check(file: &str, law: &str) -> (i32, serde_json::Value) {
    let path = fixture(file);
    let out = run(&["check", path.to_str().unwrap(), "--law", law]);
    let code = out.status.code().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (code, json)
}

#[test]
fn chain2_is_superspecial() {
    let (code, json) = check("chain2.json", "superspecial");
    assert_eq!(code, 0);
    assert_eq!(json["pass"], true);
}

#[test]
fn chain2_passes_the_theorem_laws() {
    for law in [
        "axioms",
        "general-effect",
        "prop-eff",
        "corollary",
        "modular",
        "frobenius",
    ] {
        let (code, json) = check("chain2.json", law);
        assert_eq!(code, 0, "{law}: {json}");
    }
}

#[test]
fn degenerate_classical_algebra_is_not_antispecial() {
    let (code, json) = check("classical_degenerate.json", "antispecial");
    assert_eq!(code, 1);
    assert_eq!(json["pass"], false);
    let witness = json["rows"][0]["witness"].as_str().unwrap();
    assert!(witness.contains("(0, 0)"), "{witness}");
    // it is still an ortho algebra
    assert_eq!(check("classical_degenerate.json", "ortho").0, 0);
}

#[test]
fn classical_and_relation_inputs() {
    assert_eq!(check("z3_classical.json", "axioms").0, 0);
    assert_eq!(check("z3_classical.json", "special").0, 0);
    assert_eq!(check("z3_classical.json", "antispecial").0, 1);
    assert_eq!(check("swap.json", "unitary").0, 0);
    assert_eq!(check("swap.json", "scaled-projector").0, 1);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&[
        "check",
        fixture("malformed.json").to_str().unwrap(),
        "--law",
        "axioms",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    // unknown law
    assert_eq!(check("chain2.json", "no-such-law").0, 2);
    // law that does not apply to the input kind
    assert_eq!(check("swap.json", "superspecial").0, 2);
    // missing file
    assert_eq!(check("absent.json", "axioms").0, 2);
}

#[test]
fn enumerate_two() {
    let out = run(&["enumerate", "--size", "2", "--filter", "torsion-free"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let rec: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(
        rec["table"]["table"],
        serde_json::json!([[0, 1], [1, null]])
    );

    let all = run(&["enumerate", "--size", "2"]);
    assert_eq!(String::from_utf8(all.stdout).unwrap().lines().count(), 3);
}

#[test]
fn oversized_requests_are_refused() {
    let out = run(&["enumerate", "--size", "20"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--size", "8", "--allow-large"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--max-size", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_four_has_no_disagreements() {
    let out = run(&["sweep", "--max-size", "4"]);
    assert!(out.status.success());
    let mut csv = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = csv.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "n",
            "count",
            "modular-count",
            "frobenius-count",
            "disagreements"
        ]
    );
    let rows: Vec<csv::StringRecord> = csv.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(&row[4], "0");
    }
}

#[test]
fn sweep_output_ignores_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let target = dir.path().join(format!("jobs{jobs}"));
        let out = run(&[
            "sweep",
            "--max-size",
            "5",
            "--jobs",
            jobs,
            "--out",
            target.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let summary = std::fs::read(target.join("summary.csv")).unwrap();
        let catalog = std::fs::read(target.join("catalog.jsonl")).unwrap();
        outputs.push((summary, catalog));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn lemma_suites_pass() {
    let out = run(&[
        "verify-lemmas",
        "--max-size",
        "3",
        "--samples",
        "200",
        "--seed",
        "3",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["failures"], 0, "{line}");
    }
}
