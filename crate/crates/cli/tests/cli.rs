use std::path::PathBuf;
use std::process::{Command, Output};

use rank3_etf::io::{GramFile, GraphFile, VectorsFile};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rank3-etf"));
    c.env_remove("ETF_RANK3_MAX_VERTICES");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn table3_csv_is_deterministic_and_matches_welch() {
    let args = ["table3", "--max-n", "3", "--format", "csv"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, run(&args).stdout);

    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,size,v,k,lambda,mu,M,N,M_minus_N,alpha_sq,status,provenance");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][..9], ["NOplus2n_2", "3", "28", "15", "6", "10", "28", "7", "21"]);
    assert!(rows.iter().any(|r| r[0] == "M22_comp" && r[6..9] == ["176", "154", "22"]));
    for r in &rows {
        let (m, n): (u64, u64) = (r[6].parse().unwrap(), r[7].parse().unwrap());
        let (a, b) = r[9].split_once('/').unwrap();
        let (a, b): (u64, u64) = (a.parse().unwrap(), b.parse().unwrap());
        assert_eq!(a * n * (m - 1), b * (m - n), "{r:?}");
        assert_eq!(r[10], "certified");
    }
}

#[test]
fn table4_json_has_parameter_only_rows() {
    let o = run(&["table4", "--max-n", "2", "--max-q", "9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    let mcl = rows.iter().find(|r| r["family"] == "McLaughlin").unwrap();
    assert_eq!((mcl["M"].as_u64(), mcl["N"].as_u64(), mcl["M_minus_N"].as_u64()), (Some(276), Some(23), Some(253)));
    assert_eq!(mcl["status"], "parameter-only");
    let p9 = rows.iter().find(|r| r["family"] == "Paley" && r["size"] == 9).unwrap();
    assert_eq!((p9["M"].as_u64(), p9["N"].as_u64()), (Some(10), Some(5)));
}

#[test]
fn table5_pairs_are_listed() {
    let o = run(&["table5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("G2_2_comp") && l.contains("Oplus2n_2(n=3)")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["list"]).status.code(), Some(0));
    assert_eq!(run(&["verify-etf", "Triangular", "7"]).status.code(), Some(1));
    assert_eq!(run(&["verify-etf", "Paley", "13", "--descendant"]).status.code(), Some(0));
    assert_eq!(run(&["verify-etf", "Sp2n_2", "3"]).status.code(), Some(1));
    assert_eq!(run(&["build", "NoSuchFamily", "3"]).status.code(), Some(2));
    assert_eq!(run(&["build", "Paley", "11"]).status.code(), Some(2));
    assert_eq!(run(&["table3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["experiment", "nope"]).status.code(), Some(2));
}

#[test]
fn vertex_guard_from_environment() {
    let o = bin().args(["build", "Paley", "13"]).env("ETF_RANK3_MAX_VERTICES", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = bin().args(["build", "Paley", "13"]).env("ETF_RANK3_MAX_VERTICES", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph_files_feed_the_verifiers() {
    let path = tmp("vo4.json");
    let o = run(&["build", "VOplus", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let file: GraphFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((file.v, file.edges.len()), (16, 72));

    let o = run(&["verify-srg", "--graph", path.to_str().unwrap(), "--format", "json"]);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["k"], 9);
    assert_eq!(summary["equiangular_criterion"], true);

    let path_graph = tmp("path.json");
    let path_file = GraphFile { v: 4, edges: vec![[0, 1], [1, 2], [2, 3]], label: None };
    std::fs::write(&path_graph, serde_json::to_string(&path_file).unwrap()).unwrap();
    assert_eq!(run(&["verify-srg", "--graph", path_graph.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn exported_gram_round_trips_through_the_verifier() {
    let path = tmp("g2.json");
    let o = run(&["export-gram", "G2_2_comp", "--certify", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let file: GramFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((file.m, file.n), (36, Some(21)));
    assert_eq!(file.certificate.as_ref().unwrap().alpha_sq, "1/49");

    let o = run(&["verify-etf", "--gram", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["status"], "ETF");
    assert_eq!(cert["N"], 21);
}

#[test]
fn exported_vectors() {
    let o = run(&["export-vectors", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let file: VectorsFile = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((file.m, file.n, file.d), (16, 6, 6));
    assert!(file.vectors.iter().flatten().all(|x| x == "0/1+1/6*sqrt(6)" || x == "0/1+-1/6*sqrt(6)"), "{:?}", file.vectors[0]);
}

#[test]
fn experiment_reports_carry_witnesses() {
    let o = run(&["experiment", "iso_checks", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["question"], "iso_checks");
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["decision"] == "isomorphic" && c["witness_verified"] == true));

    let o = run(&["experiment", "switch_paley_peisert", "--size", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("K1 + Paley(q=9)"));
}
