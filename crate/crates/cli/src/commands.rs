//! The `list`, `emit`, `run`, `check` and `goldens` commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use pipec_core::backend::{alpha_equivalent, emit_c};
use pipec_core::corpus::{run_corpus, Flavor};
use pipec_core::oracle::laws::{run_suite, SuiteConfig};
use pipec_core::registry::{Kind, PipelineSpec};
use pipec_core::roundtrip::run_round_trips;

use crate::report::ReportWriter;
use crate::{CliError, Context, Status};

/// Sizes at which `check` compares every registered pipeline with the
/// reference.
pub const CHECK_SIZES: [usize; 5] = [0, 1, 17, 1_000, 10_000];

/// The seed every golden file is emitted with.
pub const GOLDEN_SEED: u32 = 0;

/// Prints one line per registered pipeline.
pub fn list(ctx: &Context, out: &mut dyn Write) -> Result<Status, CliError> {
    for p in ctx.registry.entries() {
        let kind = match p.kind {
            Kind::Benchmark => "benchmark",
            Kind::Showcase => "showcase",
        };
        let inputs: Vec<String> = p
            .inputs
            .iter()
            .map(|a| format!("{}:{:?}/{}", a.name, a.len, a.fill.name()))
            .collect();
        writeln!(
            out,
            "{:<20} {:<9} [{}] {}",
            p.name,
            kind,
            inputs.join(", "),
            p.description
        )?;
    }
    Ok(Status::Success)
}

/// The C translation unit of a pipeline.
pub fn emitted(p: &PipelineSpec, seed: u32) -> String {
    emit_c(&p.function(seed), p.name, seed)
}

/// Prints the C of a pipeline, or writes it to `path`.
pub fn emit(
    ctx: &Context,
    name: &str,
    seed: u32,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let c = emitted(ctx.registry.get(name)?, seed);
    match path {
        Some(path) => {
            fs::write(path, c).map_err(|e| CliError::io(path, e))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(c.as_bytes())?,
    }
    Ok(Status::Success)
}

/// Interprets a pipeline at one size and compares with the reference.
pub fn run(ctx: &Context, name: &str, size: usize, out: &mut dyn Write) -> Result<Status, CliError> {
    let p = ctx.registry.get(name)?;
    let v = p.verify(size);
    if let Some(g) = &v.generated {
        writeln!(out, "{name} (size {size}): checksum {}", g.checksum())?;
    }
    match &v.problem {
        None => writeln!(out, "agrees with the reference; fusion audit clean")?,
        Some(problem) => writeln!(out, "FAILED: {problem}")?,
    }
    let mut report = ReportWriter::create(&ctx.reports_dir, "run")?;
    report.record("run", &v)?;
    report.finish()?;
    Ok(Status::from_ok(v.ok()))
}

/// Parameters of `check`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub fuel: usize,
    pub instances: usize,
    pub seed: u64,
    pub corpus: usize,
    pub nested: usize,
    pub round_trips: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            fuel: 50,
            instances: 100,
            seed: 0,
            corpus: 500,
            nested: 100,
            round_trips: 1000,
        }
    }
}

#[derive(Serialize)]
struct CheckSummary<'a> {
    config: &'a CheckConfig,
    laws_ok: bool,
    corpus_ok: bool,
    linearization_ok: bool,
    round_trips_ok: bool,
    registry_ok: bool,
    ok: bool,
}

/// Runs the law suite, the random corpora, the run-length round trips and
/// the registry comparison. Fails if any of them finds a problem.
pub fn check(ctx: &Context, cfg: &CheckConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    let mut report = ReportWriter::create(&ctx.reports_dir, "check")?;

    let suite = run_suite(SuiteConfig {
        fuel: cfg.fuel,
        instances: cfg.instances,
        seed: cfg.seed,
    });
    out.write_all(suite.summary().as_bytes())?;
    report.record("laws", &suite)?;
    let laws_ok = suite.ok();

    let corpus = run_corpus(cfg.seed, cfg.corpus, Flavor::Any);
    writeln!(
        out,
        "corpus: {} pipelines, {} raw operations in normal form, {} failures",
        corpus.pipelines,
        corpus.raw_ops_checked,
        corpus.failures.len()
    )?;
    for f in &corpus.failures {
        writeln!(out, "  #{} {}: {}", f.index, f.pipeline, f.problem)?;
    }
    report.record("corpus", &corpus)?;
    let corpus_ok = cfg.corpus == 0 || corpus.ok();

    let nested = run_corpus(cfg.seed, cfg.nested, Flavor::Nested);
    writeln!(
        out,
        "linearization: {} nested pipelines, {} failures",
        nested.pipelines,
        nested.failures.len()
    )?;
    for f in &nested.failures {
        writeln!(out, "  #{} {}: {}", f.index, f.pipeline, f.problem)?;
    }
    report.record("linearization", &nested)?;
    let linearization_ok = cfg.nested == 0 || nested.ok();

    let rle = run_round_trips(cfg.seed, cfg.round_trips);
    writeln!(
        out,
        "run-length round trips: {} cases ({} with runs over 255), {} failures",
        rle.cases,
        rle.long_runs,
        rle.failures.len()
    )?;
    for f in &rle.failures {
        writeln!(out, "  #{}: {}", f.index, f.problem)?;
    }
    report.record("round_trips", &rle)?;
    let round_trips_ok = cfg.round_trips == 0 || rle.ok();

    let mut registry_ok = true;
    for p in ctx.registry.entries() {
        for &size in &CHECK_SIZES {
            let v = p.verify(size);
            if let Some(problem) = &v.problem {
                registry_ok = false;
                writeln!(out, "registry {} at size {size}: {problem}", p.name)?;
            }
            report.record("registry", &v)?;
        }
    }
    writeln!(
        out,
        "registry: {} pipelines at sizes {CHECK_SIZES:?}: {}",
        ctx.registry.entries().len(),
        if registry_ok { "all agree" } else { "FAILED" }
    )?;

    let ok = laws_ok && corpus_ok && linearization_ok && round_trips_ok && registry_ok;
    report.record(
        "summary",
        &CheckSummary {
            config: cfg,
            laws_ok,
            corpus_ok,
            linearization_ok,
            round_trips_ok,
            registry_ok,
            ok,
        },
    )?;
    let path = report.finish()?;
    writeln!(out, "{} (report: {})", if ok { "check passed" } else { "check FAILED" }, path.display())?;
    Ok(Status::from_ok(ok))
}

/// How a pipeline's emitted C relates to its golden file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum GoldenStatus {
    Match,
    Missing,
    Drift { mismatch: String },
    Updated,
    Unchanged,
}

#[derive(Serialize)]
struct GoldenRecord<'a> {
    name: &'a str,
    path: PathBuf,
    #[serde(flatten)]
    status: &'a GoldenStatus,
}

/// The golden file of a pipeline.
pub fn golden_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.c"))
}

/// Compares one pipeline's emitted C with its golden file, or rewrites the
/// file when `update` is set.
pub fn golden_status(dir: &Path, p: &PipelineSpec, update: bool) -> Result<GoldenStatus, CliError> {
    let path = golden_path(dir, p.name);
    let c = emitted(p, GOLDEN_SEED);
    let existing = fs::read_to_string(&path).ok();
    if update {
        if existing.as_deref() == Some(c.as_str()) {
            return Ok(GoldenStatus::Unchanged);
        }
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        fs::write(&path, c).map_err(|e| CliError::io(&path, e))?;
        return Ok(GoldenStatus::Updated);
    }
    Ok(match existing {
        None => GoldenStatus::Missing,
        Some(golden) => match alpha_equivalent(&golden, &c) {
            Ok(()) => GoldenStatus::Match,
            Err(m) => GoldenStatus::Drift {
                mismatch: m.to_string(),
            },
        },
    })
}

/// Checks (or, with `update`, rewrites) the golden file of every pipeline.
pub fn goldens(ctx: &Context, update: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let mut report = ReportWriter::create(&ctx.reports_dir, "goldens")?;
    let mut ok = true;
    for p in ctx.registry.entries() {
        let status = golden_status(&ctx.goldens_dir, p, update)?;
        let line = match &status {
            GoldenStatus::Match => "matches".to_string(),
            GoldenStatus::Missing => "MISSING (run `pipec goldens --update`)".to_string(),
            GoldenStatus::Drift { mismatch } => format!("DRIFT: {mismatch}"),
            GoldenStatus::Updated => "updated".to_string(),
            GoldenStatus::Unchanged => "unchanged".to_string(),
        };
        ok &= !matches!(status, GoldenStatus::Missing | GoldenStatus::Drift { .. });
        writeln!(out, "{:<20} {line}", p.name)?;
        report.record(
            "golden",
            &GoldenRecord {
                name: p.name,
                path: golden_path(&ctx.goldens_dir, p.name),
                status: &status,
            },
        )?;
    }
    report.finish()?;
    Ok(Status::from_ok(ok))
}
