//! Inspection of stream shapes without generating code: nesting depth,
//! item types and the normal-form checker.
//!
//! Inspection applies `Init` bodies and inner-stream builders to placeholder
//! handles. Building stream values never draws fresh names (only generating
//! statements does), so inspection leaves the session counter untouched.

use std::cell::Cell;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::backend::session::scratch;
use crate::backend::{
    ArrLen, ArrVar, Exp, MutVar, Name, NameKind, Stm, TypeRep,
};

use super::rep::*;

/// Nesting bound beyond which a stream is considered malformed.
pub const MAX_DEPTH: usize = 16;

fn probe_name(id: u32) -> Name {
    Name {
        kind: NameKind::Probe,
        id,
    }
}

/// A placeholder code value of the given type.
pub fn probe_exp(ty: TypeRep) -> Exp {
    crate::backend::dref(&MutVar {
        name: probe_name(0),
        ty,
        wide: false,
    })
}

/// The placeholder handle matching an `Init` node.
pub fn probe_bound(init: &StateInit) -> Bound {
    match init {
        StateInit::Cell(e) | StateInit::Index(e) => Bound::Cell(MutVar {
            name: probe_name(1),
            ty: e.ty(),
            wide: false,
        }),
        StateInit::Value(e) => Bound::Value(probe_exp(e.ty())),
        StateInit::StaticArray(ty, data) => Bound::Array(ArrVar {
            name: probe_name(2),
            elem: *ty,
            len: ArrLen::Fixed(data.len()),
        }),
    }
}

/// The type of the items a flat code-valued stream produces, found by
/// generating its producer once in a scratch session. Streams that never
/// call their consumer default to `Int`.
pub fn item_type(f: &FlatRec<Exp>) -> TypeRep {
    let seen = Rc::new(Cell::new(None));
    let s2 = seen.clone();
    let k = consumer(move |x: Exp| {
        s2.set(Some(x.ty()));
        Stm::Unit
    });
    scratch(|| match &f.producer {
        Producer::Unroll(e) => {
            e.emit_rc(k);
        }
        Producer::For { index, .. } => {
            index.at(probe_exp(TypeRep::Int), k);
        }
    });
    seen.get().unwrap_or(TypeRep::Int)
}

/// Strips the `Init` spine with placeholder handles.
pub fn core_of<A: Item>(s: &Stream<A>) -> Stream<A> {
    let mut cur = s.clone();
    while let Stream::Init { init, body } = &cur {
        let next = body(probe_bound(init));
        cur = next;
    }
    cur
}

/// Nesting depth and linearity of a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub nesting_depth: usize,
    pub linear: bool,
}

/// How deeply nested a stream is, and whether it is a linear flat stream.
pub fn complexity<A: Item>(s: &Stream<A>) -> Complexity {
    match core_of(s) {
        Stream::Init { .. } => unreachable!("core_of strips Init"),
        Stream::Flat(f) => Complexity {
            nesting_depth: 0,
            linear: f.linear,
        },
        Stream::Nested(n) => {
            let ty = item_type(&n.outer);
            let inner = complexity(&(n.inner)(probe_exp(ty)));
            Complexity {
                nesting_depth: 1 + inner.nesting_depth,
                linear: false,
            }
        }
    }
}

/// Violations of the normal-form grammar.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("guard has type {0}, expected bool")]
    GuardType(TypeRep),
    #[error("upper bound of an indexed producer has type {0}, expected int")]
    BoundType(TypeRep),
    #[error("trailing guard has type {0}, expected bool")]
    TrailingType(TypeRep),
    #[error("nesting deeper than {MAX_DEPTH}")]
    TooDeep,
}

/// The shape of a normal form, for diagnostics and structural tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Init(Box<Shape>),
    Flat { indexed: bool, linear: bool },
    Nested { outer: Box<Shape>, inner: Box<Shape> },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Init(s) => write!(f, "Init {s}"),
            Shape::Flat { indexed, linear } => write!(
                f,
                "Flat({}{})",
                if *indexed { "for" } else { "unroll" },
                if *linear { ", linear" } else { "" }
            ),
            Shape::Nested { outer, inner } => write!(f, "Nested({outer} => {inner})"),
        }
    }
}

fn check_bool(e: &Exp, err: fn(TypeRep) -> NormalFormError) -> Result<(), NormalFormError> {
    if e.ty() != TypeRep::Bool {
        return Err(err(e.ty()));
    }
    Ok(())
}

fn check_flat<A: Item>(f: &FlatRec<A>) -> Result<Shape, NormalFormError> {
    check_bool(&f.grd, NormalFormError::GuardType)?;
    let indexed = match &f.producer {
        Producer::Unroll(_) => false,
        Producer::For { upb, .. } => {
            if upb.ty() != TypeRep::Int {
                return Err(NormalFormError::BoundType(upb.ty()));
            }
            true
        }
    };
    Ok(Shape::Flat {
        indexed,
        linear: f.linear,
    })
}

fn check_depth<A: Item>(s: &Stream<A>, depth: usize) -> Result<Shape, NormalFormError> {
    if depth > MAX_DEPTH {
        return Err(NormalFormError::TooDeep);
    }
    match s {
        Stream::Init { init, body } => Ok(Shape::Init(Box::new(check_depth(
            &body(probe_bound(init)),
            depth,
        )?))),
        Stream::Flat(f) => check_flat(f),
        Stream::Nested(n) => {
            let outer = check_flat(&n.outer)?;
            check_bool(&n.trailing, NormalFormError::TrailingType)?;
            let ty = item_type(&n.outer);
            let inner = check_depth(&(n.inner)(probe_exp(ty)), depth + 1)?;
            Ok(Shape::Nested {
                outer: Box::new(outer),
                inner: Box::new(inner),
            })
        }
    }
}

/// Checks that a stream is in normal form: an `Init` spine over a flat
/// stream or a nesting whose inner stream is itself a normal form, with
/// well-typed guards and bounded depth. Returns the shape.
pub fn check_normal_form<A: Item>(s: &Stream<A>) -> Result<Shape, NormalFormError> {
    check_depth(s, 0)
}
