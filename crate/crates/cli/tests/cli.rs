use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use descoord_cli::format::{parse_automaton, write_automaton};
use serde_json::Value;
use tempfile::TempDir;

fn descoord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descoord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn corpus() -> TempDir {
    let dir = TempDir::new().unwrap();
    let o = descoord(&["corpus", "--out", p(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    dir
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn files_below(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(files_below(&path));
        } else {
            out.push(path);
        }
    }
    out.sort();
    out
}

#[test]
fn corpus_writes_every_example() {
    let dir = corpus();
    for name in [
        "example-one/problem.json",
        "example-one/problem_closure.json",
        "example-one-second/problem.json",
        "controllability-example/problem.json",
        "closedness-example/coordinator.json",
        "database/plant_3.json",
        "inclusion-counterexample/specification.json",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn corpus_automata_round_trip() {
    let dir = corpus();
    let mut seen = 0;
    for path in files_below(dir.path()) {
        let name = path.file_name().unwrap().to_str().unwrap();
        if name.starts_with("problem") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let m = parse_automaton(&text, name).unwrap();
        assert_eq!(write_automaton(&m), text, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 12);
}

#[test]
fn closure_of_example_one_is_not_decomposable() {
    let dir = corpus();
    let problem = dir.path().join("example-one/problem_closure.json");
    let o = descoord(&["check", "cond-decomposable", "--problem", p(&problem)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).contains("word a1 b2"), "{}", stdout(&o));
    let problem = dir.path().join("example-one/problem.json");
    let o = descoord(&["check", "cond-decomposable", "--problem", p(&problem)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn controllability_example_checks() {
    let dir = corpus();
    let sub = dir.path().join("controllability-example");
    let o = descoord(&[
        "check",
        "cond-controllable",
        "--problem",
        p(&sub.join("problem.json")),
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).contains("uncontrollable u"), "{}", stdout(&o));
    let plant = dir.path().join("g.json");
    let o = descoord(&[
        "compose",
        p(&sub.join("plant_1.json")),
        p(&sub.join("plant_2.json")),
        "-o",
        p(&plant),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = descoord(&[
        "check",
        "controllable",
        "--spec",
        p(&sub.join("specification.json")),
        "--plant",
        p(&plant),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn closedness_example_fails_for_the_coordinator() {
    let dir = corpus();
    let problem = dir.path().join("closedness-example/problem.json");
    let o = descoord(&["check", "cond-closed", "--problem", p(&problem)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn coordinate_database() {
    let dir = corpus();
    let out = dir.path().join("run");
    let problem = dir.path().join("database/problem.json");
    let o = descoord(&[
        "coordinate",
        "--problem",
        p(&problem),
        "--out",
        p(&out),
        "--monolithic",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["all_hold"], true);
    for v in report["verdicts"].as_array().unwrap() {
        assert_eq!(v["status"], "holds", "{v}");
    }
    let local = report["supervisors"]["local"].as_array().unwrap();
    assert_eq!(local.len(), 3);
    for f in local {
        assert_eq!(f["states"], 3);
        let file = out.join(f["file"].as_str().unwrap());
        let m = parse_automaton(&std::fs::read_to_string(file).unwrap(), "s").unwrap();
        assert_eq!(m.generator.num_states(), 3);
    }
    assert_eq!(report["nonblocking"]["nonblocking"], true);
    assert!(out.join("nonblocking_coordinator.json").exists());
}

#[test]
fn coordinate_is_deterministic() {
    let dir = corpus();
    let problem = dir.path().join("database/problem.json");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = descoord(&[
            "coordinate",
            "--problem",
            p(&problem),
            "--out",
            p(out),
            "--step2b",
        ]);
        assert!(o.status.code().is_some_and(|c| c < 2), "{}", stderr(&o));
    }
    let fa = files_below(&a);
    assert!(!fa.is_empty());
    assert_eq!(fa.len(), files_below(&b).len());
    for f in fa {
        let g = b.join(f.file_name().unwrap());
        assert_eq!(
            std::fs::read(&f).unwrap(),
            std::fs::read(&g).unwrap(),
            "{}",
            f.display()
        );
    }
}

#[test]
fn coordinate_counterexample_reports_the_failed_inclusion() {
    let dir = corpus();
    let out = dir.path().join("run");
    let problem = dir.path().join("inclusion-counterexample/problem.json");
    let o = descoord(&["coordinate", "--problem", p(&problem), "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("inclusion for subsystem 1: fails"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn dot_of_empty_generator() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("empty.json");
    std::fs::write(&f, r#"{"events": [], "states": 0}"#).unwrap();
    let o = descoord(&["dot", p(&f)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "digraph \"empty\" {\n}\n");
}

#[test]
fn dot_draws_marking_and_uncontrollable_events() {
    let dir = corpus();
    let o = descoord(&["dot", p(&dir.path().join("database/plant_1.json"))]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("doublecircle"));
    assert!(text.contains("style=dashed"));
}

#[test]
fn automaton_operations() {
    let dir = corpus();
    let sub = dir.path().join("database");
    let spec = sub.join("specification.json");
    let o = descoord(&["supcon", "--spec", p(&spec), "--plant", p(&spec)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(
        parse_automaton(&stdout(&o), "out")
            .unwrap()
            .generator
            .num_states()
            > 0
    );
    let o = descoord(&["project", p(&sub.join("plant_1.json")), "--events", "a1,e1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m = parse_automaton(&stdout(&o), "out").unwrap();
    assert_eq!(m.generator.alphabet().len(), 2);
    for cmd in ["trim", "minimize"] {
        let o = descoord(&[cmd, p(&spec)]);
        assert!(o.status.success(), "{cmd}: {}", stderr(&o));
    }
    let o = descoord(&[
        "check",
        "observer",
        p(&sub.join("plant_1.json")),
        "--events",
        "a1",
    ]);
    assert!(o.status.code().is_some_and(|c| c < 2), "{}", stderr(&o));
    let o = descoord(&[
        "check",
        "lcc",
        p(&sub.join("plant_1.json")),
        "--events",
        "a1",
    ]);
    assert!(o.status.code().is_some_and(|c| c < 2), "{}", stderr(&o));
}

#[test]
fn nonblocking_check_reports_a_blocking_word() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let ev = r#"[{"name": "x", "controllable": true}, {"name": "y", "controllable": true}]"#;
    std::fs::write(&a, format!(r#"{{"events": {ev}, "states": 3, "initial": 0, "marked": [2], "transitions": [[0, "x", 1], [1, "y", 2]]}}"#)).unwrap();
    std::fs::write(&b, format!(r#"{{"events": {ev}, "states": 3, "initial": 0, "marked": [2], "transitions": [[0, "y", 1], [1, "x", 2]]}}"#)).unwrap();
    let o = descoord(&["check", "nonblocking", p(&a), p(&b)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails: word"), "{}", stdout(&o));
    let o = descoord(&["check", "nonblocking", p(&a)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_errors_name_the_position() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(
        &f,
        "{\n  \"events\": [\n    {\"name\": \"a\" \"controllable\": true}\n  ]\n}\n",
    )
    .unwrap();
    let o = descoord(&["dot", p(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));
    std::fs::write(
        &f,
        r#"{"events": [{"name": "a", "controllable": true}], "states": 2, "initial": 0, "transitions": [[0, "b", 1]]}"#,
    )
    .unwrap();
    let o = descoord(&["trim", p(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("transitions[0][1]"), "{}", stderr(&o));
}

#[test]
fn precondition_errors_exit_with_two() {
    let dir = corpus();
    let o = descoord(&["dot", p(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    let problem = dir.path().join("example-one/problem.json");
    let o = descoord(&["check", "cond-controllable", "--problem", p(&problem)]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = descoord(&["oracle", "--count", "1", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_cross_validation() {
    let o = descoord(&["oracle", "--seed", "3", "--count", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| !l.is_empty()).count() >= 3);
}
