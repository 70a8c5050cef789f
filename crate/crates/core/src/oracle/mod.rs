//! Reference semantics: coinductive stateful skip streams over host values.
//!
//! A stream observation is either finished or a step with an optional item,
//! the current state and a demand-driven continuation. The core operations
//! (`unroll`, `init`, `abstract`, `adjust`, `guard`, `map_filter`,
//! `flat_map`, `zip`) are defined directly on observations; the sugared
//! combinators are built from them. Bounded traces give strong and weak
//! equivalence checks, which drive the law suite and the comparison of
//! generated code against this reference.

pub mod laws;
pub mod linearize;
pub mod stream;
pub mod sugar;
pub mod trace;
pub mod value;

pub use linearize::{o_linearize_flat, o_linearize_nested, InnerSpec, Linearized, NestedSpec};
pub use stream::{
    o_abstract, o_adjust, o_flat_map, o_guard, o_init, o_map_filter, o_noskip, o_unroll, o_zip,
    OStream,
};
pub use trace::{
    equiv_check, noskip_trace, run_items, strong_check_with_states, trace, Counterexample,
    EquivVerdict, Event, Mode, Trace,
};
pub use value::Val;
