//! Timing generated code against hand-written C baselines.
//!
//! The generated translation unit and the baseline `<name>.c` are each
//! linked with the shared `harness.c`, built with the same compiler
//! command. The harness fills the inputs, runs one warm-up call (iteration
//! 0) and then the timed iterations, printing `name,iter,ns,checksum` per
//! call. Every checksum of both programs must agree, and must equal the
//! reference result when the size is small enough to evaluate it.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};

use pipec_core::registry::{Fill, Kind, Observed, PipelineSpec, FUNCTION_NAME};

use crate::report::ReportWriter;
use crate::{CliError, Context, Status};

/// Largest size at which the checksum is also compared with the reference
/// semantics.
pub const REFERENCE_SIZE_LIMIT: usize = 10_000;

/// The compiler used when neither `--cc` nor the environment names one.
pub const DEFAULT_CC: &str = "cc";

/// Parameters of one benchmark run.
#[derive(Clone, Debug, Serialize)]
pub struct BenchConfig {
    pub iters: usize,
    pub size: usize,
    /// The compiler command, possibly with flags (`gcc -march=native`).
    pub cc: String,
}

/// The compiler command: the flag, then the environment, then `cc`.
pub fn resolve_cc(flag: Option<&str>, env: Option<&str>) -> String {
    flag.or(env.filter(|s| !s.trim().is_empty()))
        .unwrap_or(DEFAULT_CC)
        .to_string()
}

/// One line of harness output.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Sample {
    pub name: String,
    pub iter: usize,
    pub ns: u64,
    pub checksum: i64,
}

/// Parses the harness output, checking that it names `name` and lists the
/// iterations `0..=iters` in order.
pub fn parse_samples(csv_text: &str, name: &str, iters: usize) -> Result<Vec<Sample>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let mut samples = vec![];
    for rec in rdr.deserialize::<Sample>() {
        let s = rec.map_err(|e| CliError::Bench(format!("malformed harness output: {e}")))?;
        if s.name != name || s.iter != samples.len() {
            return Err(CliError::Bench(format!(
                "unexpected harness line {s:?} (expected {name}, iteration {})",
                samples.len()
            )));
        }
        samples.push(s);
    }
    if samples.len() != iters + 1 {
        return Err(CliError::Bench(format!(
            "harness printed {} lines, expected {}",
            samples.len(),
            iters + 1
        )));
    }
    Ok(samples)
}

/// Summary statistics of the timed iterations (the warm-up excluded).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub iterations: usize,
    pub mean_ns: f64,
    pub median_ns: f64,
    pub min_ns: u64,
    pub stddev_ns: f64,
}

impl Timing {
    pub fn of(samples: &[Sample]) -> Option<Timing> {
        let mut ns: Vec<u64> = samples.iter().filter(|s| s.iter > 0).map(|s| s.ns).collect();
        if ns.is_empty() {
            return None;
        }
        ns.sort_unstable();
        let n = ns.len() as f64;
        let mean = ns.iter().map(|&x| x as f64).sum::<f64>() / n;
        let var = ns.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n;
        let mid = ns.len() / 2;
        let median = if ns.len().is_multiple_of(2) {
            (ns[mid - 1] + ns[mid]) as f64 / 2.0
        } else {
            ns[mid] as f64
        };
        Some(Timing {
            iterations: ns.len(),
            mean_ns: mean,
            median_ns: median,
            min_ns: ns[0],
            stddev_ns: var.sqrt(),
        })
    }
}

/// The outcome of `bench`, as reported.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub name: String,
    pub status: &'static str,
    pub config: BenchConfig,
    pub lengths: Vec<usize>,
    pub fills: Vec<&'static str>,
    pub checksum: Option<i64>,
    pub checksums_agree: bool,
    pub reference_checked: bool,
    pub generated: Option<Timing>,
    pub baseline: Option<Timing>,
    /// Mean generated time over mean baseline time.
    pub ratio: Option<f64>,
    pub notes: Vec<String>,
}

fn harness_fill(fill: Fill) -> Result<&'static str, CliError> {
    match fill {
        Fill::Mod10 | Fill::Index => Ok(fill.name()),
        Fill::Custom(name, _) => Err(CliError::Bench(format!(
            "the harness cannot produce the `{name}` fill"
        ))),
    }
}

/// Splits the compiler command into program and arguments.
fn cc_words(cc: &str) -> Result<Vec<String>, CliError> {
    match shlex::split(cc) {
        Some(w) if !w.is_empty() => Ok(w),
        _ => Err(CliError::Bench(format!("cannot parse compiler command `{cc}`"))),
    }
}

/// Whether the compiler command can be started at all.
pub fn compiler_available(cc: &str) -> bool {
    let Ok(words) = cc_words(cc) else {
        return false;
    };
    Command::new(&words[0])
        .args(&words[1..])
        .arg("--version")
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

/// Compiles `unit` with the harness into `exe`.
pub fn compile(
    cc: &str,
    harness: &Path,
    unit: &Path,
    symbol: &str,
    name: &str,
    arity: usize,
    exe: &Path,
) -> Result<(), CliError> {
    let words = cc_words(cc)?;
    let mut cmd = Command::new(&words[0]);
    cmd.args(&words[1..]);
    if !words[1..].iter().any(|w| w.starts_with("-O")) {
        cmd.arg("-O2");
    }
    cmd.arg(format!("-DBENCH_FN={symbol}"))
        .arg(format!("-DBENCH_NAME=\"{name}\""))
        .arg(format!("-DBENCH_ARITY={arity}"))
        .arg(harness)
        .arg(unit)
        .arg("-o")
        .arg(exe);
    let out = cmd
        .output()
        .map_err(|e| CliError::Bench(format!("starting `{cc}`: {e}")))?;
    if !out.status.success() {
        return Err(CliError::Bench(format!(
            "compiling {} failed:\n{}",
            unit.display(),
            String::from_utf8_lossy(&out.stderr)
        )));
    }
    Ok(())
}

fn run_harness(exe: &Path, args: &[String]) -> Result<String, CliError> {
    let out = Command::new(exe)
        .args(args)
        .output()
        .map_err(|e| CliError::io(exe, e))?;
    if !out.status.success() {
        return Err(CliError::Bench(format!(
            "{} failed: {}",
            exe.display(),
            String::from_utf8_lossy(&out.stderr)
        )));
    }
    String::from_utf8(out.stdout).map_err(|e| CliError::Bench(format!("harness output: {e}")))
}

/// The baseline translation unit of a benchmark.
pub fn baseline_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.c"))
}

/// The symbol a baseline defines.
pub fn baseline_symbol(name: &str) -> String {
    format!("baseline_{name}")
}

fn skipped(p: &PipelineSpec, cfg: &BenchConfig, note: String) -> BenchRecord {
    BenchRecord {
        name: p.name.to_string(),
        status: "skipped",
        config: cfg.clone(),
        lengths: vec![],
        fills: vec![],
        checksum: None,
        checksums_agree: false,
        reference_checked: false,
        generated: None,
        baseline: None,
        ratio: None,
        notes: vec![note],
    }
}

/// Builds, runs and compares a benchmark; the record is also written to
/// `reports/bench.jsonl`.
pub fn bench(ctx: &Context, name: &str, cfg: &BenchConfig, out: &mut dyn Write) -> Result<Status, CliError> {
    let p = ctx.registry.get(name)?;
    if p.kind != Kind::Benchmark {
        return Err(CliError::Bench(format!("`{name}` is not a benchmark and has no baseline")));
    }
    let record = if compiler_available(&cfg.cc) {
        measure(ctx, p, cfg)?
    } else {
        skipped(p, cfg, format!("compiler `{}` is not available; benchmark skipped", cfg.cc))
    };
    print_record(&record, out)?;
    let mut report = ReportWriter::create(&ctx.reports_dir, "bench")?;
    report.record("bench", &record)?;
    report.finish()?;
    Ok(Status::from_ok(record.status != "failed"))
}

fn print_record(r: &BenchRecord, out: &mut dyn Write) -> io::Result<()> {
    for n in &r.notes {
        writeln!(out, "{}: {n}", r.name)?;
    }
    if r.status == "skipped" {
        return Ok(());
    }
    writeln!(
        out,
        "{} (size {}, lengths {:?}, {}): checksum {} {}",
        r.name,
        r.config.size,
        r.lengths,
        r.config.cc,
        r.checksum.map_or("-".into(), |c| c.to_string()),
        if r.checksums_agree { "(agrees)" } else { "(MISMATCH)" }
    )?;
    if let (Some(g), Some(b)) = (&r.generated, &r.baseline) {
        writeln!(
            out,
            "  generated {:.0} ns ± {:.0}, baseline {:.0} ns ± {:.0}, ratio {:.2}",
            g.mean_ns,
            g.stddev_ns,
            b.mean_ns,
            b.stddev_ns,
            r.ratio.unwrap_or(f64::NAN)
        )?;
    }
    Ok(())
}

fn measure(ctx: &Context, p: &PipelineSpec, cfg: &BenchConfig) -> Result<BenchRecord, CliError> {
    let harness = ctx.baselines_dir.join("harness.c");
    let baseline = baseline_path(&ctx.baselines_dir, p.name);
    for f in [&harness, &baseline] {
        if !f.is_file() {
            return Err(CliError::Bench(format!("missing {}", f.display())));
        }
    }
    let lengths: Vec<usize> = p.inputs.iter().map(|a| a.len.len(cfg.size)).collect();
    let fills = p
        .inputs
        .iter()
        .map(|a| harness_fill(a.fill))
        .collect::<Result<Vec<_>, _>>()?;
    let mut args = vec![cfg.iters.to_string()];
    for (n, f) in lengths.iter().zip(&fills) {
        args.push(n.to_string());
        args.push(f.to_string());
    }

    let dir = tempfile::tempdir().map_err(|e| CliError::io(std::env::temp_dir(), e))?;
    let unit = dir.path().join(format!("{}.c", p.name));
    fs::write(&unit, pipec_core::backend::emit_c(&p.function(0), p.name, 0))
        .map_err(|e| CliError::io(&unit, e))?;
    let arity = p.inputs.len();
    let gen_exe = dir.path().join("generated");
    let base_exe = dir.path().join("baseline");
    compile(&cfg.cc, &harness, &unit, FUNCTION_NAME, p.name, arity, &gen_exe)?;
    compile(&cfg.cc, &harness, &baseline, &baseline_symbol(p.name), p.name, arity, &base_exe)?;

    let gen = parse_samples(&run_harness(&gen_exe, &args)?, p.name, cfg.iters)?;
    let base = parse_samples(&run_harness(&base_exe, &args)?, p.name, cfg.iters)?;

    let mut notes = vec![];
    let checksum = gen[0].checksum;
    let mut agree = gen.iter().chain(&base).all(|s| s.checksum == checksum);
    if !agree {
        notes.push("generated and baseline checksums differ".to_string());
    }
    let reference_checked = cfg.size <= REFERENCE_SIZE_LIMIT;
    if reference_checked {
        let want = p.reference_output(&p.inputs_for(cfg.size))?;
        if want != Observed::Result(checksum) {
            agree = false;
            notes.push(format!("reference result is {}", want.checksum()));
        }
    } else {
        notes.push(format!(
            "size above {REFERENCE_SIZE_LIMIT}: checksums compared between programs only"
        ));
    }
    if cfg.iters == 0 {
        notes.push("no timed iterations: checksums validated only".to_string());
    }
    let generated = Timing::of(&gen);
    let baseline = Timing::of(&base);
    let ratio = match (&generated, &baseline) {
        (Some(g), Some(b)) if b.mean_ns > 0.0 => Some(g.mean_ns / b.mean_ns),
        _ => None,
    };
    Ok(BenchRecord {
        name: p.name.to_string(),
        status: if agree { "ok" } else { "failed" },
        config: cfg.clone(),
        lengths,
        fills,
        checksum: Some(checksum),
        checksums_agree: agree,
        reference_checked,
        generated,
        baseline,
        ratio,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cc_precedence() {
        assert_eq!(resolve_cc(Some("clang"), Some("gcc")), "clang");
        assert_eq!(resolve_cc(None, Some("gcc -O3")), "gcc -O3");
        assert_eq!(resolve_cc(None, Some("  ")), DEFAULT_CC);
        assert_eq!(resolve_cc(None, None), DEFAULT_CC);
    }

    #[test]
    fn samples_are_parsed_and_validated() {
        let text = "sum,0,90,450\nsum,1,10,450\nsum,2,30,450\n";
        let s = parse_samples(text, "sum", 2).unwrap();
        assert_eq!(s[2], Sample { name: "sum".into(), iter: 2, ns: 30, checksum: 450 });
        let t = Timing::of(&s).unwrap();
        assert_eq!((t.iterations, t.min_ns, t.mean_ns, t.median_ns), (2, 10, 20.0, 20.0));
        assert!(parse_samples(text, "sum", 3).is_err());
        assert!(parse_samples(text, "cart", 2).is_err());
        assert!(parse_samples("sum,0,x,1\n", "sum", 0).is_err());
        assert!(parse_samples("sum,1,5,1\n", "sum", 0).is_err());
    }

    #[test]
    fn no_timed_iterations_have_no_timing() {
        let s = parse_samples("sum,0,90,450\n", "sum", 0).unwrap();
        assert_eq!(Timing::of(&s), None);
    }
}
