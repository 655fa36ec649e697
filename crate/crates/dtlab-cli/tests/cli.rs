//! End-to-end checks of the dtlab binary: exit codes, report shapes, and
//! seed-for-seed reproducibility of generated files and tester output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dtlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn dtlab")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not json ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(dir: &Path, name: &str) -> (PathBuf, String) {
    let p = dir.join(name);
    let s = p.to_str().unwrap().to_string();
    (p, s)
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, s1) = path_str(dir.path(), "a.json");
    let (p2, s2) = path_str(dir.path(), "b.json");
    let (p3, s3) = path_str(dir.path(), "c.json");
    for s in [&s1, &s2] {
        let out = run(&[
            "gen", "--kind", "tree-depth", "--n", "10", "--depth", "3", "--seed", "9", "--out", s,
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(&[
        "gen", "--kind", "tree-depth", "--n", "10", "--depth", "3", "--seed", "10", "--out", &s3,
    ]);
    assert_eq!(code(&out), 0);
    let read = |p: &PathBuf| std::fs::read(p).unwrap();
    assert_eq!(read(&p1), read(&p2), "same seed must give identical bytes");
    assert_ne!(read(&p1), read(&p3), "different seeds should differ");
}

#[test]
fn generated_parity_file_is_the_expected_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    let (p, s) = path_str(dir.path(), "par.json");
    let out = run(&["gen", "--kind", "parity", "--n", "4", "--k", "2", "--seed", "1", "--out", &s]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(v["repr"], "poly");
    assert_eq!(v["n"], 4);
    assert_eq!(v["monomials"], serde_json::json!([[1], [2]]));
}

#[test]
fn distance_of_a_function_to_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (_, s) = path_str(dir.path(), "t.json");
    run(&["gen", "--kind", "tree-size", "--n", "6", "--size", "5", "--seed", "3", "--out", &s]);
    let out = run(&["distance", "--fn", &s, "--other", &s, "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["distance"], 0.0);
    assert_eq!(v["mode"], "exact");
}

#[test]
fn exact_learner_recovers_a_generated_tree() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "f.json");
    let (_, h) = path_str(dir.path(), "h.json");
    run(&["gen", "--kind", "tree-depth", "--n", "8", "--depth", "2", "--seed", "21", "--out", &f]);
    let out = run(&[
        "learn", "--algo", "exact-dtds", "--fn", &f, "--depth", "2", "--size", "4", "--delta",
        "0.1", "--seed", "5", "--out", &h,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["outcome"], "learned");
    let out = run(&["distance", "--fn", &f, "--other", &h, "--mode", "exact"]);
    assert_eq!(stdout_json(&out)["distance"], 0.0);
}

#[test]
fn out_of_class_target_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "par.json");
    run(&["gen", "--kind", "parity", "--n", "8", "--k", "8", "--seed", "1", "--out", &f]);
    let out = run(&[
        "learn", "--algo", "dtds", "--fn", &f, "--depth", "2", "--size", "4", "--eps", "0.1",
        "--delta", "0.1", "--seed", "2",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["outcome"], "not_in_class");
}

#[test]
fn tester_accepts_members_and_rejects_parity() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "t.json");
    let (_, par) = path_str(dir.path(), "par.json");
    run(&["gen", "--kind", "tree-depth", "--n", "12", "--depth", "3", "--seed", "7", "--out", &f]);
    run(&["gen", "--kind", "parity", "--n", "10", "--k", "10", "--seed", "1", "--out", &par]);
    let ok = run(&[
        "test", "--tester", "depth-df", "--fn", &f, "--depth", "3", "--eps", "0.25", "--seed", "4",
    ]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    assert_eq!(stdout_json(&ok)["decision"], "accept");
    let far = run(&[
        "test", "--tester", "depth-df", "--fn", &par, "--depth", "3", "--eps", "0.25", "--seed",
        "4",
    ]);
    assert_eq!(code(&far), 1);
    assert_eq!(stdout_json(&far)["decision"], "reject");
}

#[test]
fn exhausted_budget_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "t.json");
    run(&["gen", "--kind", "tree-depth", "--n", "12", "--depth", "3", "--seed", "7", "--out", &f]);
    let out = run(&[
        "test", "--tester", "depth-df", "--fn", &f, "--depth", "3", "--eps", "0.25", "--seed",
        "4", "--budget", "25",
    ]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["decision"], "inconclusive");
    assert_eq!(v["queries"]["bb"], 25);
}

#[test]
fn usage_errors_exit_with_three() {
    assert_eq!(code(&run(&["frobnicate"])), 3);
    assert_eq!(code(&run(&["gen", "--kind", "tree-depth", "--n", "4"])), 3);
    assert_eq!(code(&run(&["test", "--tester", "size-u", "--fn", "/nonexistent.json", "--size", "4"])), 3);
    // help and version are not usage errors
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn tester_reports_are_reproducible_for_equal_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "t.json");
    run(&["gen", "--kind", "tree-size", "--n", "10", "--size", "4", "--seed", "13", "--out", &f]);
    let args = [
        "test", "--tester", "size-u", "--fn", &f, "--size", "4", "--eps", "0.3", "--seed", "6",
        "--reduced-constants",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout, "same seed must give identical reports");
}

#[test]
fn size_tester_step_cap_override_forces_walk_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "par12.json");
    run(&["gen", "--kind", "parity", "--n", "12", "--k", "12", "--seed", "1", "--out", &f]);
    let out = run(&[
        "test", "--tester", "size-u", "--fn", &f, "--size", "12", "--eps", "0.1", "--seed", "3",
        "--reduced-constants", "--step-cap", "11",
    ]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["decision"], "reject");
}

#[test]
fn suite_aggregates_match_per_trial_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let (cfg_path, cfg) = path_str(dir.path(), "suite.json");
    std::fs::write(
        &cfg_path,
        serde_json::json!({
            "tester": "depth-df",
            "gen": {"kind": "tree-depth", "n": 10, "depth": 2},
            "params": {"depth": 2, "eps": 0.3, "delta": 0.1},
            "trials": 4,
            "seed": 70
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["suite", "--config", &cfg]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["trials"], 4);
    let per = v["per_trial"].as_array().unwrap();
    assert_eq!(per.len(), 4);
    let accepts = per.iter().filter(|t| t["decision"] == "accept").count() as u64;
    assert_eq!(v["accept"].as_u64().unwrap(), accepts);
    let rate = v["accept_rate"].as_f64().unwrap();
    assert!((rate - accepts as f64 / 4.0).abs() < 1e-12);
    // seeds advance one per trial
    assert_eq!(per[0]["seed"], 70);
    assert_eq!(per[3]["seed"], 73);
}

#[test]
fn empty_suite_reports_no_rate() {
    let dir = tempfile::tempdir().unwrap();
    let (cfg_path, cfg) = path_str(dir.path(), "suite.json");
    std::fs::write(
        &cfg_path,
        serde_json::json!({
            "tester": "depth-df",
            "gen": {"kind": "tree-depth", "n": 8, "depth": 2},
            "params": {"depth": 2},
            "trials": 0,
            "seed": 1
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["suite", "--config", &cfg]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["trials"], 0);
    assert!(v.get("accept_rate").is_none_or(|r| r.is_null()));
}

#[test]
fn learn_report_written_to_file_when_out_given() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "f.json");
    let (hp, h) = path_str(dir.path(), "h.json");
    run(&["gen", "--kind", "tree-depth", "--n", "6", "--depth", "2", "--seed", "2", "--out", &f]);
    let out = run(&[
        "learn", "--algo", "consis", "--fn", &f, "--depth", "3", "--size", "8", "--seed", "1",
        "--out", &h,
    ]);
    assert_eq!(code(&out), 0);
    // the hypothesis lands in --out as a loadable function file
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&hp).unwrap()).unwrap();
    assert_eq!(v["repr"], "tree");
    let d = run(&["distance", "--fn", &f, "--other", &h]);
    assert_eq!(stdout_json(&d)["distance"], 0.0);
}

#[test]
fn sampled_distance_tracks_the_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let (_, f) = path_str(dir.path(), "f.json");
    let (_, g) = path_str(dir.path(), "g.json");
    run(&["gen", "--kind", "tree-depth", "--n", "8", "--depth", "3", "--seed", "31", "--out", &f]);
    run(&["gen", "--kind", "tree-depth", "--n", "8", "--depth", "3", "--seed", "32", "--out", &g]);
    let exact = stdout_json(&run(&["distance", "--fn", &f, "--other", &g]))["distance"]
        .as_f64()
        .unwrap();
    let sampled = stdout_json(&run(&[
        "distance", "--fn", &f, "--other", &g, "--mode", "sampled", "--samples", "20000",
        "--seed", "5",
    ]))["distance"]
        .as_f64()
        .unwrap();
    assert!(
        (exact - sampled).abs() < 0.03,
        "exact {exact} vs sampled {sampled}"
    );
}
