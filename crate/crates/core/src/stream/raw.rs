//! The raw stream interface: state allocation, producers, guards, mapping
//! and nesting. Each operation maps normal forms to normal forms.

use std::rc::Rc;

use crate::backend::{and, bool_, if1, ArrVar, Exp, Lit, MutVar, Stm, TypeRep};

use super::nf_audit::audited;
use super::rep::*;

fn init_node<A: Item>(init: StateInit, body: impl Fn(Bound) -> Stream<A> + 'static) -> Stream<A> {
    Stream::Init {
        init,
        body: Rc::new(body),
    }
}

/// Allocates an immutable value, let-bound once before the stream runs.
pub fn initializing<A: Item>(e: Exp, k: impl Fn(Exp) -> Stream<A> + 'static) -> Stream<A> {
    audited("initializing", init_node(StateInit::Value(e), move |b| k(b.value())))
}

/// Allocates a mutable state cell before the stream runs.
pub fn initializing_ref<A: Item>(e: Exp, k: impl Fn(MutVar) -> Stream<A> + 'static) -> Stream<A> {
    audited("initializing_ref", init_node(StateInit::Cell(e), move |b| k(b.cell())))
}

/// Allocates a constant array in the data segment before the stream runs.
pub fn initializing_static_array<A: Item>(
    elem: TypeRep,
    data: Vec<Lit>,
    k: impl Fn(ArrVar) -> Stream<A> + 'static,
) -> Stream<A> {
    audited(
        "initializing_static_array",
        init_node(StateInit::StaticArray(elem, data), move |b| k(b.array())),
    )
}

/// An infinite stream from a linear emitter (one item per activation).
pub fn infinite<A: Item>(unr: Emitter<A>) -> Stream<A> {
    audited(
        "infinite",
        Stream::Flat(FlatRec {
            producer: Producer::Unroll(unr),
            grd: bool_(true),
            linear: true,
        }),
    )
}

/// The items `index(0) .. index(upb - 1)`, each produced exactly once.
pub fn indexed<A: Item>(upb: Exp, index: Indexer<A>) -> Stream<A> {
    audited(
        "indexed",
        Stream::Flat(FlatRec {
            producer: Producer::For { upb, index },
            grd: bool_(true),
            linear: true,
        }),
    )
}

/// Terminates the stream as soon as `g` is false. `g` may only become false
/// once the stream is effectively ended, and must stay false afterwards —
/// a caller obligation that is not checked.
pub fn guard<A: Item>(g: Exp, s: Stream<A>) -> Stream<A> {
    audited("guard", guard_nf(g, s))
}

fn guard_nf<A: Item>(g: Exp, s: Stream<A>) -> Stream<A> {
    match s {
        Stream::Init { init, body } => init_node(init, move |b| guard(g.clone(), body(b))),
        Stream::Flat(f) => Stream::Flat(FlatRec {
            grd: and(g, f.grd),
            ..f
        }),
        Stream::Nested(n) => Stream::Nested(Nested {
            trailing: and(g, n.trailing),
            ..n
        }),
    }
}

/// A code-level item transformer in continuation-passing style.
pub type MapFn<A, B> = Rc<dyn Fn(A, Consumer<B>) -> Stm>;

fn map_producer<A: Item, B: Item>(p: Producer<A>, f: MapFn<A, B>) -> Producer<B> {
    match p {
        Producer::Unroll(e) => Producer::Unroll(Emitter::new(move |k: Consumer<B>| {
            let f = f.clone();
            e.emit(move |x| f(x, k.clone()))
        })),
        Producer::For { upb, index } => Producer::For {
            upb,
            index: Indexer::new(move |i, k: Consumer<B>| {
                let f = f.clone();
                index.at(i, consumer(move |x| f(x, k.clone())))
            }),
        },
    }
}

fn map_rc<A: Item, B: Item>(linear: bool, f: MapFn<A, B>, s: Stream<A>) -> Stream<B> {
    match s {
        Stream::Init { init, body } => {
            init_node(init, move |b| map_rc(linear, f.clone(), body(b)))
        }
        Stream::Flat(fr) => Stream::Flat(FlatRec {
            producer: map_producer(fr.producer, f),
            grd: fr.grd,
            linear: fr.linear && linear,
        }),
        Stream::Nested(n) => {
            let inner = n.inner.clone();
            Stream::Nested(Nested {
                outer: n.outer,
                inner: Rc::new(move |x| map_rc(linear, f.clone(), inner(x))),
                trailing: n.trailing,
            })
        }
    }
}

/// Transforms every item with `f`, which calls its continuation at most
/// once — exactly once when `linear` is set.
pub fn map_raw<A: Item, B: Item>(
    linear: bool,
    f: impl Fn(A, Consumer<B>) -> Stm + 'static,
    s: Stream<A>,
) -> Stream<B> {
    audited("map_raw", map_rc(linear, Rc::new(f), s))
}

/// Applies a pure code transformer to every item; preserves linearity.
pub fn map_raw_<A: Item, B: Item>(f: impl Fn(A) -> B + 'static, s: Stream<A>) -> Stream<B> {
    map_raw(true, move |x, k| k(f(x)), s)
}

/// Keeps the items satisfying `p`.
pub fn filter_raw<A: Item>(p: impl Fn(&A) -> Exp + 'static, s: Stream<A>) -> Stream<A> {
    map_raw(
        false,
        move |x: A, k: Consumer<A>| {
            let c = p(&x);
            if1(c, k(x))
        },
        s,
    )
}

/// Replaces every item by the stream `f` builds from it. The shape of the
/// inner stream must not depend on the item value.
pub fn flat_map_raw<B: Item>(f: impl Fn(Exp) -> Stream<B> + 'static, s: CStream) -> Stream<B> {
    audited("flat_map_raw", flat_map_rc(Rc::new(f), s))
}

fn flat_map_rc<B: Item>(f: InnerFn<B>, s: CStream) -> Stream<B> {
    match s {
        Stream::Init { init, body } => init_node(init, move |b| flat_map_rc(f.clone(), body(b))),
        Stream::Flat(outer) => Stream::Nested(Nested {
            outer,
            inner: f,
            trailing: bool_(true),
        }),
        Stream::Nested(n) => {
            // The trailing guard terminates the stream being flat-mapped,
            // not the streams its items are replaced with: it moves to the
            // outer stream and to the current inner stream, and the new,
            // deeper level is left unguarded by it.
            let inner = n.inner.clone();
            let t = n.trailing;
            let outer = FlatRec {
                grd: and(n.outer.grd, t.clone()),
                ..n.outer
            };
            Stream::Nested(Nested {
                outer,
                inner: Rc::new(move |x| flat_map_rc(f.clone(), guard(t.clone(), inner(x)))),
                trailing: bool_(true),
            })
        }
    }
}
