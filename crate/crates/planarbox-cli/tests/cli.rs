use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_planarbox"));
    c.env_remove("PLANARBOX_KMAX_HARD_LIMIT");
    c
}

fn actions(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../actions").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn alpha_values() {
    let o = run(&["alpha", "(gen id 3)", "--ratio", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("1"));

    let o = run(&["alpha", "(gen E 4 5)", "--ratio", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("(1/2)*sqrt(2)"));
}

#[test]
fn alpha_of_composite_matches_loop_data() {
    // c = ⌈2/2⌉ + ⌊2/2⌋ − l with l = 3 capped loops.
    let o = run(&["alpha", "(compose (gen E 2 3) 1 (gen I 3 2))", "--ratio", "2"]);
    let out = stdout(&o);
    assert!(o.status.success());
    assert!(out.contains("c = -1"), "{out}");
    assert!(out.contains("l = 3"), "{out}");
    assert_eq!(out.lines().next(), Some("(1/2)*sqrt(2)"));
}

#[test]
fn alpha_reads_expression_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.sexp");
    std::fs::write(&p, "(gen jones 3)\n").unwrap();
    let o = run(&["alpha", p.to_str().unwrap(), "--ratio", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("sqrt(3)"));
}

#[test]
fn alpha_exit_codes() {
    assert_eq!(run(&["alpha", "(gen id"]).status.code(), Some(2));
    assert_eq!(run(&["alpha", "(gen frob 2)"]).status.code(), Some(2));
    assert_eq!(run(&["alpha", "(compose (gen E 2 3) 1 (gen I 2 1))"]).status.code(), Some(3));
}

#[test]
fn multiply_in_each_basis() {
    let o = run(&["multiply", "--colour", "2", "1", "2"]);
    assert_eq!(stdout(&o).trim(), "S(0)");
    let o = run(&["multiply", "--colour", "2", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "S(2)");

    let a = actions("z3xz2.json");
    let o = run(&["multiply", "--action", a.to_str().unwrap(), "--colour", "2", "--basis", "theta", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "ΘS(0) + ΘS(1)");

    let o = run(&["multiply", "--colour", "2", "--basis", "u", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "2*U(0) + 2*U(1)");
}

#[test]
fn multiply_rejects_bad_labels() {
    assert_eq!(run(&["multiply", "--colour", "2", "5", "1"]).status.code(), Some(2));
    assert_eq!(run(&["multiply", "--colour", "3", "1", "1"]).status.code(), Some(2));
}

#[test]
fn suite_all_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = actions("z3xz2.json");
    let mut reports = Vec::new();
    for (i, extra) in [&[][..], &["--sequential"][..]].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.json"));
        let mut args = vec!["suite", "all", "--action", a.to_str().unwrap(), "--kmax", "4", "--seed", "7", "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        reports.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["summary"]["failed"], 0);
    let rec = &v["records"][0];
    for key in ["suite", "case", "lhs", "rhs", "pass"] {
        assert!(rec.get(key).is_some(), "record lacks {key}");
    }
}

#[test]
fn theorem_main_sample_count() {
    let o = run(&["suite", "theorem-main", "--samples", "30", "--kmax", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs = v["records"].as_array().unwrap().iter().filter(|r| r["case"].as_str().unwrap().starts_with("pair")).count();
    assert_eq!(pairs, 30);
}

#[test]
fn jones_on_trivial_theta() {
    let a = actions("trivial-theta.json");
    let o = run(&["suite", "jones", "--action", a.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let base = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["case"].as_str().unwrap().contains("base jones element"))
        .count();
    assert_eq!(base, 3);
}

#[test]
fn suite_usage_errors() {
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "jones", "--kmax", "6"]).status.code(), Some(2));
    assert_eq!(run(&["suite", "jones", "--samples", "0"]).status.code(), Some(2));
    let o = bin().args(["suite", "jones", "--kmax", "3"]).env("PLANARBOX_KMAX_HARD_LIMIT", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_action_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"group": {"table": [[0, 1], [1, 1]]}, "theta": {"table": [[0]]}}"#).unwrap();
    assert_eq!(run(&["suite", "jones", "--action", p.to_str().unwrap()]).status.code(), Some(2));
}
