//! The normal-form representation of streams.
//!
//! A stream value is always in normal form: a spine of [`Stream::Init`]
//! nodes (state allocations) over either a flat guarded producer
//! ([`FlatRec`]) or one level of nesting ([`Nested`]) whose inner stream is
//! again a normal form. There is no zip node: zipping is eliminated when the
//! zip is constructed.
//!
//! Producers are continuation-passing code generators: an [`Emitter`] takes
//! the consumer for one item and returns the statement that produces (at
//! most) one item and feeds it to the consumer.

use std::rc::Rc;

use crate::backend::{ArrVar, Exp, Lit, MutVar, Stm, TypeRep};

/// Anything that can flow through a stream at generation time: code values
/// and tuples of them.
pub trait Item: Clone + 'static {}
impl<T: Clone + 'static> Item for T {}

/// The consumer of one item: turns the item's code into a statement.
pub type Consumer<A> = Rc<dyn Fn(A) -> Stm>;

/// Wraps a closure as a [`Consumer`].
pub fn consumer<A>(f: impl Fn(A) -> Stm + 'static) -> Consumer<A> {
    Rc::new(f)
}

/// A producer of one item's worth of code, in continuation-passing style.
pub struct Emitter<A>(Rc<dyn Fn(Consumer<A>) -> Stm>);

impl<A> Clone for Emitter<A> {
    fn clone(&self) -> Self {
        Emitter(self.0.clone())
    }
}

impl<A: Item> Emitter<A> {
    pub fn new(f: impl Fn(Consumer<A>) -> Stm + 'static) -> Self {
        Emitter(Rc::new(f))
    }

    /// Generates the producing code with `k` as the consumer.
    pub fn emit(&self, k: impl Fn(A) -> Stm + 'static) -> Stm {
        (self.0)(Rc::new(k))
    }

    /// Like [`Emitter::emit`] with an already shared consumer.
    pub fn emit_rc(&self, k: Consumer<A>) -> Stm {
        (self.0)(k)
    }
}

/// An indexed producer: given the code of an index, generates the code that
/// produces the item at that index.
pub struct Indexer<A>(Rc<dyn Fn(Exp, Consumer<A>) -> Stm>);

impl<A> Clone for Indexer<A> {
    fn clone(&self) -> Self {
        Indexer(self.0.clone())
    }
}

impl<A: Item> Indexer<A> {
    pub fn new(f: impl Fn(Exp, Consumer<A>) -> Stm + 'static) -> Self {
        Indexer(Rc::new(f))
    }

    pub fn at(&self, i: Exp, k: Consumer<A>) -> Stm {
        (self.0)(i, k)
    }
}

/// How a flat stream produces its items.
pub enum Producer<A> {
    /// An unrolling emitter over implicit state.
    Unroll(Emitter<A>),
    /// Items `index(0) .. index(upb - 1)`; the index cell is allocated only
    /// when the stream is driven, so zips of indexed streams share one index.
    For { upb: Exp, index: Indexer<A> },
}

impl<A> Clone for Producer<A> {
    fn clone(&self) -> Self {
        match self {
            Producer::Unroll(e) => Producer::Unroll(e.clone()),
            Producer::For { upb, index } => Producer::For {
                upb: upb.clone(),
                index: index.clone(),
            },
        }
    }
}

/// A flat stream: a producer, a guard over the state, and whether the
/// producer is linear (produces on every activation until the stream is
/// effectively ended).
pub struct FlatRec<A> {
    pub producer: Producer<A>,
    pub grd: Exp,
    pub linear: bool,
}

impl<A> Clone for FlatRec<A> {
    fn clone(&self) -> Self {
        FlatRec {
            producer: self.producer.clone(),
            grd: self.grd.clone(),
            linear: self.linear,
        }
    }
}

/// How an `Init` node allocates its state.
#[derive(Clone, Debug, PartialEq)]
pub enum StateInit {
    /// A mutable cell with the given initial value.
    Cell(Exp),
    /// A mutable loop-index cell with the given initial value.
    Index(Exp),
    /// An immutable let-bound value.
    Value(Exp),
    /// A constant array in the data segment.
    StaticArray(TypeRep, Vec<Lit>),
}

/// The handle an `Init` node passes to its body.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    Cell(MutVar),
    Value(Exp),
    Array(ArrVar),
}

impl Bound {
    /// The bound cell. Panics if the binder was not a cell.
    pub fn cell(&self) -> MutVar {
        match self {
            Bound::Cell(v) => *v,
            other => panic!("expected a cell binder, got {other:?}"),
        }
    }

    /// The bound value. Panics if the binder was not a value.
    pub fn value(&self) -> Exp {
        match self {
            Bound::Value(e) => e.clone(),
            other => panic!("expected a value binder, got {other:?}"),
        }
    }

    /// The bound array. Panics if the binder was not an array.
    pub fn array(&self) -> ArrVar {
        match self {
            Bound::Array(a) => *a,
            other => panic!("expected an array binder, got {other:?}"),
        }
    }
}

/// The body of an `Init` node.
pub type InitBody<A> = Rc<dyn Fn(Bound) -> Stream<A>>;

/// The inner-stream builder of a nested stream.
pub type InnerFn<A> = Rc<dyn Fn(Exp) -> Stream<A>>;

/// One level of nesting: every item of the flat `outer` stream starts a
/// fresh `inner` stream; `trailing` is the guard applied after the nesting.
pub struct Nested<A> {
    pub outer: FlatRec<Exp>,
    pub inner: InnerFn<A>,
    pub trailing: Exp,
}

impl<A> Clone for Nested<A> {
    fn clone(&self) -> Self {
        Nested {
            outer: self.outer.clone(),
            inner: self.inner.clone(),
            trailing: self.trailing.clone(),
        }
    }
}

/// A stream in normal form.
pub enum Stream<A> {
    Init { init: StateInit, body: InitBody<A> },
    Flat(FlatRec<A>),
    Nested(Nested<A>),
}

impl<A> Clone for Stream<A> {
    fn clone(&self) -> Self {
        match self {
            Stream::Init { init, body } => Stream::Init {
                init: init.clone(),
                body: body.clone(),
            },
            Stream::Flat(f) => Stream::Flat(f.clone()),
            Stream::Nested(n) => Stream::Nested(n.clone()),
        }
    }
}

/// A stream whose items are single code values.
pub type CStream = Stream<Exp>;
