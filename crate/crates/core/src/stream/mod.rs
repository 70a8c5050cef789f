//! Streams as normal forms, built by evaluation.
//!
//! Every raw operation maps normal forms to normal forms, so a pipeline is
//! normalized simply by evaluating its combinator applications; [`iter`]
//! then generates fused code in a single pass.

pub mod iter;
pub mod linearize;
pub mod nf_audit;
pub mod raw;
pub mod rep;
pub mod shape;
pub mod zip;

pub use iter::iter;
pub use linearize::{closure_convert, linearize};
pub use nf_audit::{audit_normal_forms, NfAudit, Violation};
pub use raw::{
    filter_raw, flat_map_raw, guard, indexed, infinite, initializing, initializing_ref,
    initializing_static_array, map_raw, map_raw_,
};
pub use rep::{
    consumer, Bound, CStream, Consumer, Emitter, FlatRec, Indexer, InnerFn, Item, Nested,
    Producer, StateInit, Stream,
};
pub use shape::{check_normal_form, complexity, Complexity, NormalFormError, Shape};
pub use zip::zip_raw;
