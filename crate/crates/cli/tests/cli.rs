use std::fs;
use std::process::{Command, Output};

use burau4::braid::BvWord;
use burau4::burau::burau_bv;
use burau4::decomp::{extract_pqr, find_minimal_n, validate};
use burau4::regularity::check_instance;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burau4"))
        .args(args)
        .env_remove("BURAU4_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn eval_prints_matrix_of_a() {
    let o = run(&["eval", "a"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "[-t^-1+1, -t^-1+t, -t^-1]\n[0, -t, 0]\n[-1, 0, 0]\n"
    );
}

#[test]
fn eval_of_empty_word_is_identity() {
    let o = run(&["eval", ""]);
    assert_eq!(stdout(&o), "[1, 0, 0]\n[0, 1, 0]\n[0, 0, 1]\n");
}

#[test]
fn eval_json_matches_library() {
    let o = run(&["eval", "b^2 A", "--format", "json"]);
    let v = json(&o);
    let m = burau_bv(&BvWord::parse("b^2 A").unwrap());
    assert_eq!(v["matrix"], serde_json::to_value(&m).unwrap());
}

#[test]
fn eval_rejects_bad_generator() {
    let o = run(&["eval", "s9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn decompose_bab_at_n_two() {
    let o = run(&["decompose", "B A b", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "word: B A b\nn: 2\nP: t^-2\nQ: 0\nR: -1+t-t^3+t^4\nvalidated_depth: 3\n"
    );
}

#[test]
fn decompose_ba2b_json() {
    let o = run(&["decompose", "b a^-2 B", "--n", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["P"], serde_json::json!([[-5, -1], [-4, 1], [-2, -1]]));
    assert_eq!(v["Q"], serde_json::json!([[-1, 1]]));
    assert_eq!(v["R"], serde_json::json!([]));
    let mut d = extract_pqr(BvWord::parse("b a^-2 B").unwrap(), 2).unwrap();
    validate(&mut d, 3).unwrap();
    assert_eq!(v, serde_json::to_value(&d).unwrap());
}

#[test]
fn decompose_search_matches_library() {
    let o = run(&["decompose", "a b^2 a B", "--format", "json"]);
    let d = find_minimal_n(BvWord::parse("a b^2 a B").unwrap(), 14, 3).unwrap();
    assert_eq!(json(&o), serde_json::to_value(&d).unwrap());
}

#[test]
fn decompose_braid_word() {
    let w = BvWord::parse("B A b").unwrap().expand().to_string();
    let o = run(&["decompose", &w, "--n", "2"]);
    assert!(stdout(&o).contains("P: t^-2\n"));
}

#[test]
fn predict_bab_at_power_five() {
    let o = run(&[
        "predict", "B A b", "--n", "2", "--m", "3", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["power"], 5);
    let direct = burau_bv(&BvWord::parse("a^5 B A b").unwrap());
    assert_eq!(
        v["rho11"],
        serde_json::to_value(direct.entry(1, 1)).unwrap()
    );
    assert_eq!(
        v["rho31"],
        serde_json::to_value(direct.entry(3, 1)).unwrap()
    );
}

#[test]
fn check_matches_library() {
    let o = run(&[
        "check", "b A^2 B", "--m", "6", "--l", "0", "--format", "json",
    ]);
    let expected = check_instance(&BvWord::parse("b A^2 B").unwrap(), 6, 0);
    assert_eq!(json(&o), serde_json::to_value(&expected).unwrap());
    assert_eq!(json(&o)["rho11_degmin"], -10);
}

#[test]
fn scan_is_deterministic_and_reports_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&[
            "scan",
            "b^2 a B",
            "--m-max",
            "8",
            "--l-max",
            "4",
            "--format",
            "json",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let o = run(&["scan", "", "--m-max", "0", "--l-max", "0"]);
    assert!(stdout(&o).ends_with("threshold: not found in range\n"));
}

#[test]
fn batch_thousand_trials_seed_seven() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let o = run(&[
        "batch",
        "--count",
        "1000",
        "--seed",
        "7",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1001);
    let summary: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["regular_count"], 1000);
    assert_eq!(summary["config"]["seed"], 7);
    assert_eq!(summary["schema_version"], 1);
}

#[test]
fn batch_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("1.jsonl"), dir.path().join("2.jsonl")];
    for p in &paths {
        let o = run(&[
            "batch",
            "--count",
            "300",
            "--seed",
            "99",
            "--length-max",
            "6",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
}

#[test]
fn batch_zero_count_is_usage_error() {
    assert_eq!(run(&["batch", "--count", "0"]).status.code(), Some(1));
}

#[test]
fn batch_forced_empty_word_is_inconclusive() {
    let o = run(&["batch", "--count", "1", "--fixed-w", ""]);
    assert_eq!(o.status.code(), Some(3));
    let summary: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(summary["inconclusive_count"], 1);
}

#[test]
fn batch_seed_from_environment_and_config_file() {
    let o = Command::new(env!("CARGO_BIN_EXE_burau4"))
        .args(["batch", "--count", "2"])
        .env("BURAU4_SEED", "31")
        .output()
        .unwrap();
    let summary: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(summary["config"]["seed"], 31);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# small run\nseed = 5\ncount = 3\nlength_max = 5\ntemplate = \"a^2 w A^2\"\n",
    )
    .unwrap();
    let o = run(&["batch", "--config", cfg.to_str().unwrap()]);
    let summary: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(summary["config"]["seed"], 5);
    assert_eq!(summary["trials"], 3);
    assert_eq!(summary["config"]["template"], "a^2 w A^2");
    let o = run(&["batch", "--config", cfg.to_str().unwrap(), "--count", "1"]);
    let summary: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(summary["trials"], 1);
}

#[test]
fn kernel_filter_examples() {
    assert_eq!(
        stdout(&run(&["kernel-filter", "s1"])),
        "rejected-not-in-ker-phi\n"
    );
    let a = BvWord::parse("a").unwrap().expand().to_string();
    assert_eq!(stdout(&run(&["kernel-filter", &a])), "candidate\n");
    assert_eq!(
        stdout(&run(&["kernel-filter", "s3 S1 s1 S3"])),
        "rejected-trivial\n"
    );
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["eval", "a", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
