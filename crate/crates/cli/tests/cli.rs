//! The `pipec` binary, driven end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pipec_cli::bench::compiler_available;
use pipec_cli::report::{read_report, SCHEMA_VERSION};
use pipec_core::registry::Registry;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Runs `pipec` with the repository's goldens and baselines and the given
/// reports directory.
fn pipec(reports: &Path, args: &[&str]) -> Output {
    pipec_env(reports, args, &[])
}

fn pipec_env(reports: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    pipec_in(&repo_root().join("goldens"), reports, args, env)
}

fn pipec_in(goldens: &Path, reports: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let root = repo_root();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pipec"));
    cmd.arg("--goldens-dir")
        .arg(goldens)
        .arg("--baselines-dir")
        .arg(root.join("baselines"))
        .arg("--reports-dir")
        .arg(reports)
        .args(args)
        .env_remove("PIPEC_CC");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("pipec runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn records(reports: &Path, name: &str) -> Vec<serde_json::Value> {
    let recs = read_report(&reports.join(format!("{name}.jsonl"))).unwrap();
    assert!(recs.iter().all(|r| r["schema_version"] == SCHEMA_VERSION));
    recs
}

#[test]
fn list_names_every_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(dir.path(), &["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in Registry::standard().names() {
        assert!(text.lines().any(|l| l.starts_with(&format!("{name} "))), "{name} missing");
    }
}

#[test]
fn emit_to_stdout_and_file_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = pipec(dir.path(), &["emit", "dotProduct", "--seed", "7"]);
    let path = dir.path().join("dot.c");
    let b = pipec(dir.path(), &["emit", "dotProduct", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), fs::read_to_string(&path).unwrap());
    assert!(stdout(&a).contains("seed 7"));
    let c = pipec(dir.path(), &["emit", "dotProduct", "--seed", "7"]);
    assert_eq!(a.stdout, c.stdout, "same seed, different bytes");
}

#[test]
fn unknown_pipeline_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(dir.path(), &["emit", "noSuchPipeline"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown pipeline `noSuchPipeline`"));
}

#[test]
fn run_agrees_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(dir.path(), &["run", "zipFilterFilter", "--size", "1000"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("agrees with the reference"));
    let recs = records(dir.path(), "run");
    assert_eq!(recs[0]["kind"], "run");
    assert_eq!(recs[0]["data"]["size"], 1000);
    assert_eq!(recs[0]["data"]["generated"], recs[0]["data"]["reference"]);
}

#[test]
fn goldens_match_the_repository() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(dir.path(), &["goldens"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let recs = records(dir.path(), "goldens");
    assert_eq!(recs.len(), Registry::standard().entries().len());
    assert!(recs.iter().all(|r| r["data"]["status"] == "match"));
}

#[test]
fn golden_drift_and_absence_are_detected() {
    let reports = tempfile::tempdir().unwrap();
    let goldens = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| pipec_in(goldens.path(), reports.path(), args, &[]);
    assert!(run(&["goldens", "--update"]).status.success());
    let o = run(&["goldens", "--update"]);
    assert!(stdout(&o).lines().all(|l| l.ends_with("unchanged")));

    // Renumbering names is not drift; changing a constant is.
    let sum = goldens.path().join("sum.c");
    let text = fs::read_to_string(&sum).unwrap();
    fs::write(&sum, text.replace("v_1", "v_100")).unwrap();
    assert!(run(&["goldens"]).status.success());
    fs::write(&sum, text.replacen("= 0;", "= 1;", 1)).unwrap();
    fs::remove_file(goldens.path().join("cart.c")).unwrap();
    let o = run(&["goldens"]);
    assert_eq!(o.status.code(), Some(1));
    let recs = records(reports.path(), "goldens");
    let status = |name: &str| {
        recs.iter()
            .find(|r| r["data"]["name"] == name)
            .map(|r| r["data"]["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("sum"), "drift");
    assert_eq!(status("cart"), "missing");
    assert_eq!(status("decode"), "match");
}

#[test]
fn small_check_passes_and_reports_each_part() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(
        dir.path(),
        &["check", "--instances", "40", "--corpus", "20", "--nested", "10", "--round-trips", "10", "--seed", "3"],
    );
    assert!(o.status.success(), "{}", stdout(&o));
    let recs = records(dir.path(), "check");
    for kind in ["laws", "corpus", "linearization", "round_trips", "registry", "summary"] {
        assert!(recs.iter().any(|r| r["kind"] == kind), "no {kind} record");
    }
    let summary = recs.last().unwrap();
    assert_eq!(summary["data"]["ok"], true);
}

#[test]
fn zero_fuel_check_warns() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(
        dir.path(),
        &["check", "--fuel", "0", "--instances", "2", "--corpus", "0", "--nested", "0", "--round-trips", "0"],
    );
    assert!(stdout(&o).contains("warning: fuel is 0"), "{}", stdout(&o));
    // With no observations the negative controls cannot be refuted.
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_without_a_compiler_is_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec_env(dir.path(), &["bench", "sum", "--iters", "1"], &[("PIPEC_CC", "/nonexistent/cc")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not available"));
    let recs = records(dir.path(), "bench");
    assert_eq!(recs[0]["data"]["status"], "skipped");
}

#[test]
fn bench_rejects_showcases() {
    let dir = tempfile::tempdir().unwrap();
    let o = pipec(dir.path(), &["bench", "ex2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_times_against_the_baseline() {
    if !compiler_available("cc") {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let o = pipec_env(
        dir.path(),
        &["bench", "sumOfSquaresEven", "--iters", "3", "--size", "5000"],
        &[("PIPEC_CC", "cc")],
    );
    assert!(o.status.success(), "{}", stdout(&o));
    let recs = records(dir.path(), "bench");
    let d = &recs[0]["data"];
    assert_eq!(d["status"], "ok");
    assert_eq!(d["checksums_agree"], true);
    assert_eq!(d["reference_checked"], true);
    assert_eq!(d["generated"]["iterations"], 3);
    assert!(d["ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn every_baseline_agrees_with_the_reference() {
    if !compiler_available("cc") {
        eprintln!("no C compiler; skipping");
        return;
    }
    let reg = Registry::standard();
    for p in reg.benchmarks() {
        for size in ["0", "1", "17", "1000"] {
            let dir = tempfile::tempdir().unwrap();
            let o = pipec(dir.path(), &["bench", p.name, "--iters", "0", "--size", size, "--cc", "cc"]);
            assert!(o.status.success(), "{} at {size}: {}", p.name, stdout(&o));
            let recs = records(dir.path(), "bench");
            assert_eq!(recs[0]["data"]["reference_checked"], true);
            assert_eq!(recs[0]["data"]["checksums_agree"], true, "{} at {size}", p.name);
        }
    }
}
