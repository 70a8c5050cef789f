//! Every registered pipeline: generated code agrees with the reference
//! semantics and is completely fused.

use pipec_core::backend::audit;
use pipec_core::registry::{Observed, Registry};

#[test]
fn generated_code_matches_reference_at_small_sizes() {
    let reg = Registry::standard();
    for spec in reg.entries() {
        for size in [0, 1, 17, 100] {
            let inputs = spec.inputs_for(size);
            let want = spec.reference_output(&inputs).unwrap();
            let got = spec.run_generated(&inputs).unwrap();
            assert_eq!(got, want, "{} at size {size}", spec.name);
        }
    }
}

#[test]
fn every_pipeline_is_completely_fused() {
    for spec in Registry::standard().entries() {
        let report = audit(&spec.function(0));
        assert!(report.is_clean(), "{}: {report:?}", spec.name);
    }
}

#[test]
fn showcase_values() {
    let reg = Registry::standard();
    let ex2 = reg.get("ex2").unwrap();
    let want: i64 = (1i64..).map(|x| x * x).filter(|x| x % 17 > 7).take(10).sum();
    assert_eq!(ex2.run_generated(&[]).unwrap(), Observed::Result(want));
    let pt = reg.get("tupleZip").unwrap();
    assert_eq!(pt.run_generated(&[]).unwrap(), Observed::Printed(vec![0, 2, 16, 4]));
}

#[test]
fn unknown_names_are_reported() {
    assert!(Registry::standard().get("nope").is_err());
}
