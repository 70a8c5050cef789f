//! Shared fixtures for the criterion benchmarks: the registered pipelines
//! with their inputs at a given size.

use pipec_core::registry::{PipelineSpec, Registry};

/// Every benchmark of the standard registry, with its inputs for `size`.
pub fn benchmark_inputs(size: usize) -> Vec<(PipelineSpec, Vec<Vec<i64>>)> {
    Registry::standard()
        .benchmarks()
        .map(|p| (p.clone(), p.inputs_for(size)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_benchmark_has_inputs() {
        let all = benchmark_inputs(10);
        assert_eq!(all.len(), pipec_core::registry::BENCHMARKS.len());
        assert!(all.iter().all(|(p, inputs)| inputs.len() == p.inputs.len()));
    }
}
