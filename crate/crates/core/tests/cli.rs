use std::fs;
use std::process::{Command, Output};

use gaussprep::harness::{
    CALIBRATION_COLUMNS, DISTRIBUTION_COLUMNS, REPORT_COLUMNS, SAMPLE_COLUMNS, SWEEP_COLUMNS,
};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussprep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn header(text: &str) -> Vec<String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.headers().unwrap().iter().map(String::from).collect()
}

#[test]
fn prepare_writes_distribution_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let dist = dir.path().join("dist.csv");
    let report = dir.path().join("report.csv");
    let out = run(&[
        "prepare",
        "--qubits",
        "8",
        "--delta",
        "0.01",
        "--out",
        dist.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let text = fs::read_to_string(&dist).unwrap();
    assert_eq!(header(&text), DISTRIBUTION_COLUMNS);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 256);
    let total: f64 = rows.iter().map(|r| r[3].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), -2.0);

    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(header(&text), REPORT_COLUMNS);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let row = reader.records().next().unwrap().unwrap();
    let fidelity: f64 = row[8].parse().unwrap();
    assert!(fidelity >= 0.99);
}

#[test]
fn prepare_json() {
    let out = run(&[
        "prepare", "--qubits", "3", "--format", "json", "--delta", "0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["report"]["num_qubits"], 3);
    assert_eq!(v["distribution"].as_array().unwrap().len(), 8);
}

#[test]
fn sweep_output_is_reproducible() {
    let args = ["sweep", "--qubits", "4-12", "--delta", "0,0.0123"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(header(&text), SWEEP_COLUMNS);
    assert_eq!(text.lines().count(), 19);
}

#[test]
fn sweep_with_baseline_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--qubits",
        "3,5",
        "--delta",
        "0",
        "--baseline",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(path).unwrap();
    assert_eq!(text.matches("amplitude_encoding").count(), 2);
}

#[test]
fn calibrate_reports_candidates() {
    let out = run(&["calibrate", "--qubits", "6"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(header(&text), CALIBRATION_COLUMNS);
    let labels: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(&labels[..3], ["best", "heuristic", "reported"]);
}

#[test]
fn sample_is_seed_deterministic() {
    let args = [
        "sample", "--qubits", "5", "--shots", "20000", "--seed", "11",
    ];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    let text = stdout(&a);
    assert_eq!(header(&text), SAMPLE_COLUMNS);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let total: u64 = reader
        .records()
        .map(|r| r.unwrap()[2].parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 20_000);
    assert_ne!(
        a.stdout,
        run(&["sample", "--qubits", "5", "--shots", "20000", "--seed", "12"]).stdout
    );
}

#[test]
fn export_qasm_header() {
    let out = run(&["export-qasm", "--qubits", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[4];\n"));
    assert!(text.trim_end().ends_with("x q[3];"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["prepare"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["prepare", "--qubits", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["prepare", "--qubits", "4", "--delta", "-1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["prepare", "--qubits", "4", "--beta", "wide"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["sample", "--qubits", "4", "--shots", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["sweep", "--qubits", "9-3"]).status.code(), Some(1));
    // flat target has nothing to calibrate against
    assert_eq!(
        run(&["calibrate", "--qubits", "4", "--lambda", "0"])
            .status
            .code(),
        Some(2)
    );
    let missing = std::env::temp_dir()
        .join("no-such-dir-for-gaussprep")
        .join("x.csv");
    assert_eq!(
        run(&[
            "prepare",
            "--qubits",
            "3",
            "--out",
            missing.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn smallest_flat_configuration() {
    let out = run(&["prepare", "--qubits", "1", "--lambda", "0"]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out).lines().count(), 3);
}
