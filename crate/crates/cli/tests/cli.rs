use std::path::PathBuf;

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn polyideal() -> Command {
    Command::cargo_bin("polyideal").unwrap()
}

fn json_report(args: &[&str]) -> (Value, i32) {
    let out = polyideal().args(args).arg("--json").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (v, out.status.code().unwrap())
}

#[test]
fn validate_ring() {
    polyideal()
        .args(["validate", fixture("ring8.cells").to_str().unwrap()])
        .assert()
        .success()
        .stdout(predicate::str::contains("closed path: yes"));
}

#[test]
fn validate_rejects_non_paths() {
    polyideal()
        .args(["validate", fixture("block2x2.cells").to_str().unwrap()])
        .assert()
        .code(3)
        .stdout(predicate::str::contains("closed path: no"));
}

#[test]
fn duplicates_warn_and_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("dup.cells");
    let mut text = std::fs::read_to_string(fixture("ring8.cells")).unwrap();
    text.push_str("2 2\n");
    std::fs::write(&file, text).unwrap();
    let out = polyideal().args(["validate", "--json", file.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("already listed"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["duplicates_collapsed"], 1);
    assert_eq!(v["stats"]["cells"], 8);
}

#[test]
fn parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.cells");
    std::fs::write(&empty, "# nothing\n").unwrap();
    polyideal()
        .args(["validate", empty.to_str().unwrap()])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("no cells"));
    let bad = dir.path().join("bad.cells");
    std::fs::write(&bad, "0 0\n1 0\n1 one\n").unwrap();
    polyideal()
        .args(["validate", bad.to_str().unwrap()])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("line 3"));
    polyideal().args(["validate", dir.path().join("missing").to_str().unwrap()]).assert().code(2);
}

#[test]
fn json_input_keeps_meta() {
    let (v, code) = json_report(&["validate", fixture("ring8.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["input"]["meta"]["name"], "ring8");
    assert_eq!(v["closed_path"]["is_closed_path"], true);
}

#[test]
fn gb_check_ring() {
    let (v, code) = json_report(&["gb-check", fixture("ring8.cells").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["groebner"]["is_groebner"], true);
    assert_eq!(v["groebner"]["is_reduced"], true);
    assert_eq!(v["groebner"]["generators"], 20);
}

#[test]
fn negative_control_is_refuted() {
    let file = fixture("thin_negative.cells");
    polyideal()
        .args(["gb-check", "--order", "without-w", file.to_str().unwrap()])
        .assert()
        .code(4)
        .stdout(predicate::str::contains("witness pair").and(predicate::str::contains("normal form")));
    let (v, code) = json_report(&["gb-check", "--order", "without-w", file.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert_eq!(v["closed_path"]["is_closed_path"], false);
    assert_ne!(v["groebner"]["failures"][0]["normal_form"], "0");
    // Orders that need a closed path refuse it.
    polyideal().args(["gb-check", file.to_str().unwrap()]).assert().code(3);
}

#[test]
fn orders_that_do_not_apply() {
    let ring = fixture("ring8.cells");
    polyideal().args(["order", "--order", "algorithm", ring.to_str().unwrap()]).assert().code(6);
    let algo = fixture("algorithm36.cells");
    polyideal().args(["order", "--order", "without-w", algo.to_str().unwrap()]).assert().code(6);
    polyideal().args(["order", "--order", "without-rw", algo.to_str().unwrap()]).assert().code(6);
}

#[test]
fn algorithm_order_and_conflicts() {
    let algo = fixture("algorithm36.cells");
    let (v, code) = json_report(&["gb-check", algo.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["order"]["rule"], "Algorithm");
    let rules: Vec<&str> = v["order"]["provenance"]["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["rule"].as_str().unwrap())
        .collect();
    assert!(rules.contains(&"II-B"), "{rules:?}");
    // Always keeping the first heptomino pair breaks the basis on this path.
    polyideal().args(["gb-check", "--conflicts", "first", algo.to_str().unwrap()]).assert().code(4);
}

#[test]
fn initial_ideal_is_squarefree() {
    let (v, code) = json_report(&["initial", fixture("staircase24.cells").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["initial"]["certified"], true);
    assert_eq!(v["initial"]["squarefree"], true);
}

#[test]
fn scan_degree_two_gives_the_generators() {
    let (v, code) = json_report(&["scan", "--max-degree", "2", fixture("ring8.cells").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["scan"]["primitive"], v["stats"]["inner_intervals"]);
    polyideal().args(["scan", "--max-degree", "1", fixture("ring8.cells").to_str().unwrap()]).assert().code(2);
}

#[test]
fn analyze_staircase() {
    let (v, code) = json_report(&["analyze", fixture("staircase16.cells").to_str().unwrap()]);
    assert_eq!(code, 0);
    let check = &v["census"]["zigzag_check"];
    assert_eq!(check["no_zigzag"], false);
    assert_eq!(check["lconf_or_ladder3"], false);
    assert_eq!(check["agree"], true);
    assert!(v["census"]["zigzag_walks"].as_u64().unwrap() > 0);
}

#[test]
fn random_round_trip() {
    let gen = |seed: &str| {
        polyideal()
            .args(["random", "--cells", "30", "--seed", seed, "--w-pentomino", "true", "--rw-heptomino", "true"])
            .output()
            .unwrap()
    };
    let (a, b) = (gen("11"), gen("11"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.cells");
    std::fs::write(&file, &a.stdout).unwrap();
    let (v, code) = json_report(&["validate", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["stats"]["cells"], 30);
    polyideal().args(["random", "--cells", "9"]).assert().code(2);
}

fn cell_set(text: &str) -> std::collections::BTreeSet<(i64, i64)> {
    let cells: Vec<(i64, i64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<i64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            (v[0], v[1])
        })
        .collect();
    let i0 = cells.iter().map(|c| c.0).min().unwrap();
    let j0 = cells.iter().map(|c| c.1).min().unwrap();
    cells.into_iter().map(|(i, j)| (i - i0, j - j0)).collect()
}

#[test]
fn eight_cells_is_always_the_ring() {
    let ring = cell_set(&std::fs::read_to_string(fixture("ring8.cells")).unwrap());
    for seed in ["0", "5", "123456"] {
        let out = polyideal().args(["random", "--cells", "8", "--seed", seed]).output().unwrap();
        assert!(out.status.success());
        assert_eq!(cell_set(std::str::from_utf8(&out.stdout).unwrap()), ring, "seed {seed}");
    }
}

#[test]
fn coordinates_are_echoed_unless_normalized() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("far.cells");
    let text: String = std::fs::read_to_string(fixture("ring8.cells"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let v: Vec<i64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            format!("{} {}\n", v[0] + 100, v[1] - 7)
        })
        .collect();
    std::fs::write(&file, text).unwrap();
    let (v, _) = json_report(&["validate", file.to_str().unwrap()]);
    assert_eq!(v["stats"]["bounding_box"][0]["i"], 100);
    let (v, _) = json_report(&["validate", "--normalize", file.to_str().unwrap()]);
    assert_eq!(v["stats"]["bounding_box"][0]["i"], 0);
    assert_eq!(v["input"]["normalized"], true);
}

#[test]
fn reports_match_golden_files() {
    for (args, name) in [
        (vec!["gb-check", "ring8.cells"], "gb-check-ring8.json"),
        (vec!["order", "algorithm36.cells"], "order-algorithm36.json"),
    ] {
        let mut cmd = polyideal();
        cmd.arg(args[0]).arg(fixture(args[1])).arg("--json");
        let first = cmd.output().unwrap().stdout;
        let second = cmd.output().unwrap().stdout;
        assert_eq!(first, second, "{name} differs between runs");
        let expected = std::fs::read(golden(name)).unwrap();
        assert_eq!(String::from_utf8_lossy(&first), String::from_utf8_lossy(&expected), "{name}");
    }
}
