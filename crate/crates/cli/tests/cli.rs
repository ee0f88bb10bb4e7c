use std::process::{Command, Output};

use forcing_core::families::{g1_deletion_lists, make_h};
use forcing_core::graph6;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forcing-lab")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let out = lab(&["compute", "H:6,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("e=30") && text.contains("f=2 "), "{text}");

    let out = lab(&["compute", "A_", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["f"].as_u64(), v["F"].as_u64()), (Some(0), Some(0)));

    let v: serde_json::Value = serde_json::from_slice(&lab(&["compute", "Q:3", "--json"]).stdout).unwrap();
    assert_eq!(v["f"], 2);
    assert_eq!(v["matchings"].as_array().unwrap().len(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["compute", "H:6"]).status.code(), Some(2));
    assert_eq!(lab(&["compute", "~~"]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lab(&["--pm-limit", "2", "compute", "K:6"]).status.code(), Some(3));
    assert_eq!(lab(&["verify", "/nonexistent/stream.g6"]).status.code(), Some(2));
}

#[test]
fn generate_examples() {
    let out = stdout(&lab(&["generate", "H:5,0"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(graph6::decode(lines[0]).unwrap(), make_h(5, 0).unwrap());

    let out = stdout(&lab(&["generate", "grid:4x4"]));
    let g = graph6::decode(out.trim()).unwrap();
    assert_eq!((g.order(), g.edge_count()), (16, 24));

    let out = stdout(&lab(&["generate", "G1:3"]));
    assert_eq!(out.lines().count(), g1_deletion_lists(3).len());

    let out = stdout(&lab(&["generate", "Knn:n", "--range", "2..4", "--count", "2"]));
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn verify_streams() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = dir.path().join("g2.g6");
    std::fs::write(&g2, lab(&["generate", "G2:3"]).stdout).unwrap();
    let out = lab(&["verify", g2.to_str().unwrap(), "--jsonl", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let thm: Vec<&serde_json::Value> = records.iter().filter(|r| r["theorem_id"] == "THM_4_5").collect();
    assert!(!thm.is_empty());
    assert!(thm.iter().all(|r| r["status"] == "pass"));

    let mixed = dir.path().join("mixed.g6");
    std::fs::write(&mixed, "Dhc\nnot a graph\n").unwrap();
    let csv_path = dir.path().join("out.csv");
    let out = lab(&["verify", mixed.to_str().unwrap(), "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("theorem_id,graph_id,"));
    assert!(csv.contains("PM_EXISTS,Dhc,") && csv.contains("PARSE,not a graph,"));

    let knn = dir.path().join("knn.g6");
    std::fs::write(&knn, lab(&["generate", "Knn:n", "--range", "2..4"]).stdout).unwrap();
    let out = lab(&["verify", knn.to_str().unwrap(), "--json", "-"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let hits: Vec<&serde_json::Value> =
        report["records"].as_array().unwrap().iter().filter(|r| r["theorem_id"] == "THM_4_2").collect();
    assert_eq!(hits.len(), 3);
    assert!(hits.iter().all(|r| r["status"] == "pass" && r["equality_case"] == "equality_matches_extremal"));
}

#[test]
fn sweeps_and_checkpoints() {
    let out = lab(&["sweep", "--max-order", "8", "--strict-conjectures"]);
    assert_eq!(out.status.code(), Some(0));

    let out = lab(&["sweep", "--mode", "bipartite-balanced", "--side", "3", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["summary"]["THM_4_5"]["fail"], 0);

    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let plain = lab(&["sweep", "--max-order", "6", "--json", "-"]).stdout;
    let args = ["sweep", "--max-order", "6", "--json", "-", "--checkpoint", ck.to_str().unwrap(), "--checkpoint-every", "10"];
    let first = lab(&args);
    assert_eq!(first.stdout, plain);
    // A completed checkpoint resumes at the end and reproduces the report.
    let second = lab(&args);
    assert_eq!(second.stdout, plain);
    assert!(String::from_utf8_lossy(&second.stderr).contains("resuming"));
}
