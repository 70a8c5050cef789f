//! Code generation, interpretation and reference-evaluation throughput.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use pipec_bench::benchmark_inputs;
use pipec_core::backend::emit_c;

fn generate(c: &mut Criterion) {
    let mut g = c.benchmark_group("emit_c");
    for (p, _) in benchmark_inputs(0) {
        g.bench_function(p.name, |b| b.iter(|| emit_c(&p.function(black_box(0)), p.name, 0)));
    }
    g.finish();
}

fn interpret(c: &mut Criterion) {
    let mut g = c.benchmark_group("interpret_1e3");
    g.sample_size(20);
    for (p, inputs) in benchmark_inputs(1_000) {
        let f = p.function(0);
        g.bench_function(p.name, |b| b.iter(|| p.run_function(&f, black_box(&inputs)).unwrap()));
    }
    g.finish();
}

fn reference(c: &mut Criterion) {
    let mut g = c.benchmark_group("reference_1e3");
    g.sample_size(10);
    for (p, inputs) in benchmark_inputs(1_000) {
        g.bench_function(p.name, |b| b.iter(|| p.reference_output(black_box(&inputs)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, generate, interpret, reference);
criterion_main!(benches);
