//! Stream fusion by normalization-by-evaluation.
//!
//! Pipelines are assembled from stream combinators ([`sugar`]) over a small
//! raw interface ([`stream`]). Every combinator returns a stream already in
//! normal form — an `Init` spine over a flat guarded unrolling, or one level
//! of nesting — so generating code is a single traversal that yields a
//! completely fused, first-order imperative program ([`backend`]) with no
//! closures, tuples or intermediate collections. An executable coinductive
//! skip-stream semantics ([`oracle`]) serves as the reference against which
//! the equational laws and the generated code are checked.

pub mod backend;
pub mod corpus;
pub mod oracle;
pub mod registry;
pub mod roundtrip;
pub mod stream;
pub mod sugar;

pub use backend::{ArrVar, Exp, Function, GenSession, MutVar, Stm, TypeRep};
pub use stream::Stream;
