use std::path::Path;
use std::process::{Command, Output};

use loose_ramsey::core::lrc::write_lrc;
use loose_ramsey::{Color, KUniformColoring};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loose-ramsey")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cycle_prints_canonical_structures() {
    let o = run(&["cycle", "--k", "3", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kind"], "cycle");
    assert_eq!(v["edges"], serde_json::json!([[0, 1, 2], [2, 3, 4], [0, 4, 5]]));
    let v = json(&run(&["cycle", "--k", "4", "--n", "3", "--path"]));
    assert_eq!(v["kind"], "path");
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(code(&run(&["cycle", "--k", "3", "--n", "1"])), 2);
}

#[test]
fn check_reports_arrowing() {
    let dir = tempfile::tempdir().unwrap();
    let red = dir.path().join("red.lrc");
    write_lrc(&red, &KUniformColoring::uniform(6, 3, Color::Red).unwrap()).unwrap();
    let o = run(&["check", "--input", s(&red), "--red-cycle", "3", "--blue-cycle", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["arrows"], true);
    assert_eq!(v["witness"]["color"], "R");

    let split = dir.path().join("split.lrc");
    write_lrc(&split, &KUniformColoring::split(6, 3, 5).unwrap()).unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["check", "--input", s(&split), "--red-cycle", "3", "--blue-cycle", "3", "--out", s(&out)]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["arrows"], false);

    assert_eq!(code(&run(&["check", "--input", "/nonexistent.lrc", "--red-cycle", "3", "--blue-cycle", "3"])), 2);
}

#[test]
fn exhaustive_and_randomized() {
    let o = run(&["exhaustive", "--k", "3", "--n", "2", "--m", "2", "--N", "4"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "all_arrow");
    assert_eq!(v["trials"], 16);
    assert!(v["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("2k-3")));

    let o = run(&["exhaustive", "--k", "3", "--n", "2", "--m", "2", "--N", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "counterexample");
    assert_eq!(code(&run(&["exhaustive", "--k", "3", "--n", "3", "--m", "3", "--N", "7"])), 2);

    let o = run(&["randomized", "--k", "3", "--n", "3", "--m", "3", "--N", "7", "--trials", "200", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!((v["mode"].as_str(), v["seed"].as_u64(), v["trials"].as_u64()), (Some("randomized"), Some(7), Some(200)));
    let o = run(&["randomized", "--k", "3", "--n", "3", "--m", "3", "--N", "6", "--trials", "50", "--seed", "1", "--p-red", "0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["randomized", "--k", "3", "--n", "3", "--m", "3", "--N", "7", "--trials", "0", "--seed", "7"])), 2);
}

#[test]
fn extremal_writes_rule_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("x.lrc");
    let o = run(&["extremal", "--k", "3", "--n", "3", "--m", "3", "--out", s(&f)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["N"], 6);
    assert_eq!(v["check"]["status"], "valid");
    assert_eq!(v["arrows"], false);
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.contains("split"));

    let o = run(&["extremal", "--k", "8", "--n", "5", "--m", "5", "--out", s(&f)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["N"], 36);
    assert_eq!(v["arrows"], Value::Null);

    let o = run(&["extremal", "--k", "3", "--n", "3", "--m", "3", "--paths", "--out", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["N"], 7);
}

#[test]
fn lemma_runs_trials() {
    let o = run(&["lemma", "--name", "red_pair_path", "--k", "8", "--trials", "20", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["op"], "red_pair_path");
    assert_eq!(v["trials"], 20);
    assert_eq!(v["construction_errors"], 0);
    assert_eq!(v["sample"][0]["op"], "red_pair_path");

    let o = run(&["lemma", "--name", "half_cycle_odd", "--k", "8", "--n", "5", "--forcing", "all-blue", "--trials", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["blue"], 2);
    let o = run(&["lemma", "--name", "ladder_extend", "--k", "8", "--l1", "4", "--l2", "4", "--forcing", "non-cycle-red"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["red"], 1);

    assert_eq!(code(&run(&["lemma", "--name", "nonsense", "--k", "8"])), 2);
    assert_eq!(code(&run(&["lemma", "--name", "half_cycle_odd", "--k", "8", "--n", "6"])), 2);
}

#[test]
fn cnf_and_decode() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("a.cnf");
    let o = run(&["cnf", "--k", "3", "--n", "3", "--m", "3", "--N", "6", "--out", s(&cnf)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!((v["variables"].as_u64(), v["clauses"].as_u64()), (Some(20), Some(v["clauses"].as_u64().unwrap())));

    // the split coloring on 6 vertices: red exactly inside {0..4}
    let split = KUniformColoring::split(6, 3, 5).unwrap();
    let lits = loose_ramsey::harness::encode_model(&split).unwrap();
    let model = dir.path().join("model.txt");
    let body: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    std::fs::write(&model, format!("s SATISFIABLE\nv {} 0\n", body.join(" "))).unwrap();
    let lrc = dir.path().join("m.lrc");
    let o = run(&["decode", "--cnf", s(&cnf), "--model", s(&model), "--emit", s(&lrc)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["red_edges"], 10);
    let back = loose_ramsey::core::lrc::read_lrc(&lrc).unwrap();
    assert_eq!(back.to_bits().unwrap(), split.to_bits().unwrap());

    let all_red: Vec<String> = (1..=20).map(|l: i32| l.to_string()).collect();
    std::fs::write(&model, all_red.join(" ") + " 0\n").unwrap();
    assert_eq!(code(&run(&["decode", "--cnf", s(&cnf), "--model", s(&model), "--emit", s(&lrc)])), 1);
    std::fs::write(&model, "s UNSATISFIABLE\n").unwrap();
    assert_eq!(code(&run(&["decode", "--cnf", s(&cnf), "--model", s(&model), "--emit", s(&lrc)])), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["exhaustive", "--k", "3"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
