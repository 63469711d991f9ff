//! End-to-end runs of the command line binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn homlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn chain_file(dir: &Path, name: &str, n: usize) -> PathBuf {
    write(dir, name, &homlab::digraph::Digraph::chain(n).to_text())
}

#[test]
fn count_chain_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = chain_file(dir.path(), "c1.dg", 1);
    let out = homlab(&["count", "--from", c1.to_str().unwrap(), "--to", c1.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3\n");
    let out = homlab(&[
        "count",
        "--from",
        c1.to_str().unwrap(),
        "--to",
        c1.to_str().unwrap(),
        "--strict",
    ]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn enumerate_lists_maps() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = chain_file(dir.path(), "c1.dg", 1);
    let out = homlab(&["enumerate", "--from", c1.to_str().unwrap(), "--to", c1.to_str().unwrap()]);
    assert_eq!(stdout(&out), "map 0->0 1->0\nmap 0->0 1->1\nmap 0->1 1->1\n");
}

#[test]
fn expand_round_trip_reproduces_sums() {
    // single proper arc, weight one, two clamp rounds: the count against the
    // chain of length one is 2 + 2^nu
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.dg", "digraph 2\n0 1\n");
    let w = write(dir.path(), "g.w", "weight\n0 1 1\n");
    let c1 = chain_file(dir.path(), "c1.dg", 1);
    let expanded = dir.path().join("exp.dg");
    let out = homlab(&[
        "expand",
        "--graph",
        g.to_str().unwrap(),
        "--weight",
        w.to_str().unwrap(),
        "--nu",
        "2",
        "--out",
        expanded.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = homlab(&[
        "count",
        "--from",
        expanded.to_str().unwrap(),
        "--to",
        c1.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out), "6\n");
}

#[test]
fn classify_chain() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = chain_file(dir.path(), "c3.dg", 3);
    let out = homlab(&["classify", "--graph", c3.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["poset"], true);
    assert_eq!(json["in_ta"], true);
    assert_eq!(json["in_r"], true);
    assert_eq!(json["height"], 3);
}

fn chain_plus_z_text() -> String {
    let g = homlab::digraph::Digraph::from_arcs(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)])
        .unwrap()
        .transitive_hull()
        .with_all_loops();
    g.to_text()
}

#[test]
fn phi_and_shells() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.dg", &chain_plus_z_text());
    let out = homlab(&["phi", "--graph", g.to_str().unwrap()]);
    assert_eq!(stdout(&out), "1/2\n");
    let out = homlab(&["shells", "--graph", g.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("component [4]"));
    assert!(text.contains("bottom [0] upper [3]"));
}

#[test]
fn catalog_gen_and_info() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("posets4.cat");
    let out = homlab(&[
        "catalog",
        "gen",
        "--kind",
        "posets",
        "--max-n",
        "4",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("catalog posets 4 24\n"));
    let out = homlab(&["catalog", "info", "--file", file.to_str().unwrap()]);
    let info = stdout(&out);
    assert!(info.contains("n=4: 16"));
}

#[test]
fn catalog_cap_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("all6.cat");
    let out = homlab(&[
        "catalog",
        "gen",
        "--kind",
        "all",
        "--max-n",
        "6",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let strip_elapsed = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let mut renders = Vec::new();
    for name in ["r1.txt", "r2.txt"] {
        let file = dir.path().join(name);
        let out = homlab(&[
            "verify",
            "--check",
            "lovasz",
            "--report",
            file.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "verify must exit zero on a clean sweep");
        renders.push(strip_elapsed(&std::fs::read_to_string(&file).unwrap()));
    }
    assert_eq!(renders[0], renders[1]);
    assert!(renders[0].ends_with("violations=0 instances=276"));
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let out = homlab(&["verify", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_arguments_are_usage_errors() {
    let out = homlab(&["count"]);
    assert_eq!(out.status.code(), Some(2));
}
