//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use regex::Regex;

use pipec_core::backend::{alpha_equivalent, audit, emit_c};
use pipec_core::corpus::{check_linearized, run_corpus, CorpusGen, Flavor};
use pipec_core::oracle::laws::{controls, laws, run_suite, SuiteConfig};
use pipec_core::registry::{Registry, BENCHMARKS};
use pipec_core::roundtrip::{encode, run_round_trips};

type Verdict = Result<String, String>;

/// A named criterion with its time budget.
type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn fixture(name: &str) -> String {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn emitted(reg: &Registry, name: &str, seed: u32) -> Result<String, String> {
    let p = reg.get(name).map_err(|e| e.to_string())?;
    Ok(emit_c(&p.function(seed), name, seed))
}

/// The emitted C of the squares example and of the zip of a linear with a
/// nested stream are alpha-equivalent to their reference listings.
fn golden_fidelity(reg: &Registry) -> Verdict {
    for (name, file) in [("ex2", "ex2.c"), ("tupleZip", "tuple_zip.c")] {
        alpha_equivalent(&fixture(file), &emitted(reg, name, 0)?)
            .map_err(|m| format!("{name} differs from {file}: {m}"))?;
    }
    Ok("ex2 and tupleZip alpha-equivalent to their listings".into())
}

/// The benchmarks and the run-length and grouping showcases compile to
/// first-order code with no closures, tuples or intermediate collections.
fn fusion_audit(reg: &Registry) -> Verdict {
    let names: Vec<&str> = BENCHMARKS
        .iter()
        .copied()
        .chain(["rleEncode", "rleDecode", "groupAggregate"])
        .collect();
    for name in &names {
        let f = reg.get(name).map_err(|e| e.to_string())?.function(0);
        let r = audit(&f);
        if !r.is_clean() {
            return Err(format!("{name}: {}", r.violations.join("; ")));
        }
    }
    Ok(format!("{} pipelines fully fused", names.len()))
}

/// Every registered pipeline observes exactly the reference result.
fn oracle_equivalence(reg: &Registry) -> Verdict {
    let sizes = [0, 1, 17, 1_000, 10_000];
    for p in reg.entries() {
        for size in sizes {
            let v = p.verify(size);
            if let Some(problem) = v.problem {
                return Err(format!("{} at size {size}: {problem}", p.name));
            }
        }
    }
    Ok(format!("{} pipelines x sizes {sizes:?}", reg.entries().len()))
}

/// Every law holds on at least 100 instances at fuel 50, and every negative
/// control is refuted.
fn laws_hold() -> Verdict {
    let cfg = SuiteConfig {
        fuel: 50,
        instances: 100,
        seed: 0,
    };
    let report = run_suite(cfg);
    if !report.ok() {
        return Err(report.summary());
    }
    if let Some(l) = report.laws.iter().find(|l| l.instances < 100) {
        return Err(format!("law {} checked on {} instances", l.id, l.instances));
    }
    let families: std::collections::BTreeSet<_> = laws().iter().map(|l| format!("{:?}", l.family)).collect();
    let controlled: std::collections::BTreeSet<_> = controls().iter().map(|c| format!("{:?}", c.family)).collect();
    if families != controlled {
        return Err(format!("families {families:?} but controls for {controlled:?}"));
    }
    Ok(format!(
        "{} laws x {} instances, 0 counterexamples; {} controls refuted",
        report.laws.len(),
        cfg.instances,
        report.controls.len()
    ))
}

/// The same seed always yields byte-identical C, and every raw operation of
/// a 500-pipeline random corpus yields a normal form.
fn determinism(reg: &Registry) -> Verdict {
    for p in reg.entries() {
        for seed in [0, 42] {
            if emitted(reg, p.name, seed)? != emitted(reg, p.name, seed)? {
                return Err(format!("{} emitted different C for seed {seed}", p.name));
            }
        }
    }
    let corpus = run_corpus(0, 500, Flavor::Any);
    if let Some(f) = corpus.failures.first() {
        return Err(format!("corpus #{} {}: {}", f.index, f.pipeline, f.problem));
    }
    if corpus.pipelines != 500 || corpus.raw_ops_checked == 0 {
        return Err(format!("checked {} pipelines, {} raw operations", corpus.pipelines, corpus.raw_ops_checked));
    }
    Ok(format!(
        "registry deterministic; 500 pipelines, {} raw operations in normal form",
        corpus.raw_ops_checked
    ))
}

/// The loop of the linearization machine: it runs while bit 2 of its state
/// is set, and its state takes the values 0, 3, 5 and 7.
fn q_machine_structure(c: &str) -> Result<(), String> {
    let head = Regex::new(r"while \(\((\w+) & 2\) != 0").unwrap();
    let q = head
        .captures(c)
        .ok_or("no `while ((q & 2) != 0)` loop")?
        .get(1)
        .unwrap()
        .as_str()
        .to_string();
    for k in [0, 3, 5, 7] {
        let set = Regex::new(&format!(r"\b{q} = {k};")).unwrap();
        let test = Regex::new(&format!(r"\b{q} (==|!=) {k}\b")).unwrap();
        if !set.is_match(c) && !test.is_match(c) {
            return Err(format!("state {k} of `{q}` does not appear"));
        }
    }
    Ok(())
}

/// Random nested pipelines, linearized and zipped with a counter, print
/// exactly the reference zip, through the q-machine.
fn linearization() -> Verdict {
    let mut gen = CorpusGen::new(0);
    for i in 0..100 {
        let desc = gen.pipeline(Flavor::Nested);
        let inputs = gen.inputs();
        check_linearized(&desc, &inputs).map_err(|e| format!("#{i} {desc}: {e}"))?;
        let c = emit_c(&desc.zip_linearized_function(0), "linearized", 0);
        q_machine_structure(&c).map_err(|e| format!("#{i} {desc}: {e}"))?;
    }
    Ok("100 nested pipelines equal the reference; q-machine structure present".into())
}

/// Encoding then decoding gives back the input up to short trailing zeros,
/// including runs longer than a byte counts, and 255 zeros encode as 255.
fn run_length() -> Verdict {
    let zeros = encode(&[0; 255])?;
    if zeros != vec![255] {
        return Err(format!("255 zeros encode to {zeros:?}"));
    }
    let r = run_round_trips(0, 1000);
    if let Some(f) = r.failures.first() {
        return Err(format!("case #{}: {}", f.index, f.problem));
    }
    if r.cases != 1000 || r.long_runs == 0 {
        return Err(format!("{} cases, {} with long runs", r.cases, r.long_runs));
    }
    Ok(format!("1000 round trips ({} with runs over 255); 255 zeros -> [255]", r.long_runs))
}

fn main() -> ExitCode {
    let reg = Registry::standard();
    let criteria: Vec<Criterion> = vec![
        ("golden fidelity", Duration::from_secs(1), Box::new(|| golden_fidelity(&reg))),
        ("fusion audit", Duration::from_secs(60), Box::new(|| fusion_audit(&reg))),
        ("oracle equivalence", Duration::from_secs(60), Box::new(|| oracle_equivalence(&reg))),
        ("laws", Duration::from_secs(120), Box::new(laws_hold)),
        ("determinism and normal forms", Duration::from_secs(30), Box::new(|| determinism(&reg))),
        ("linearization", Duration::from_secs(60), Box::new(linearization)),
        ("run-length round trips", Duration::from_secs(10), Box::new(run_length)),
    ];
    let mut all = true;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if took > *limit => Err(format!("{detail}, but took {took:.2?} (limit {limit:?})")),
            v => v,
        };
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                all = false;
                println!("FAIL {} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
