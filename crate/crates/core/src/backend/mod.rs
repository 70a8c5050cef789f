//! The first-order imperative target language: typed builders, AST, a
//! deterministic C emitter, a reference interpreter and structural audits.

pub mod alpha;
pub mod audit;
pub mod build;
pub mod c_emit;
pub mod interp;
pub mod ir;
pub mod session;

pub use alpha::{alpha_equivalent, AlphaMismatch};
pub use audit::{audit, audit_stm, AuditReport};
pub use build::*;
pub use c_emit::{emit_c, emit_function};
pub use interp::{InterpError, Interpreter, Outcome, Value};
pub use ir::*;
pub use session::GenSession;
