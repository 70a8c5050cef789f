//! Every registered pipeline emits C, runs to the reference result, passes
//! the fusion audit, has a golden file, and (for benchmarks) a baseline.

use std::path::{Path, PathBuf};

use pipec_cli::bench::baseline_path;
use pipec_cli::commands::{golden_status, GoldenStatus};
use pipec_core::backend::audit;
use pipec_core::registry::{Kind, Registry};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

#[test]
fn every_registered_pipeline_is_complete() {
    let root = repo_root();
    let reg = Registry::standard();
    for p in reg.entries() {
        let f = p.function(0);
        let report = audit(&f);
        assert!(report.is_clean(), "{}: {:?}", p.name, report.violations);
        let v = p.verify(17);
        assert!(v.ok(), "{}: {:?}", p.name, v.problem);
        let status = golden_status(&root.join("goldens"), p, false).unwrap();
        assert_eq!(status, GoldenStatus::Match, "{}", p.name);
        if p.kind == Kind::Benchmark {
            assert!(baseline_path(&root.join("baselines"), p.name).is_file(), "{}", p.name);
        }
    }
    assert!(root.join("baselines/harness.c").is_file());
}
