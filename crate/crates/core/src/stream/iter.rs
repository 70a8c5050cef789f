//! Driving a stream: generating the loop that feeds every item to a
//! consumer.

use std::rc::Rc;

use crate::backend::{
    and, incr, int, letl, new_index, new_static_array, newref, seq, while_, Exp, Stm,
};

use super::rep::*;

/// Generates the statement that runs the stream to completion, passing every
/// item to `k`.
///
/// `Init` nodes become allocations scoped over the rest; a flat stream
/// becomes one guarded `while` loop; a nested stream becomes an outer loop
/// whose body runs the inner stream in its own loop. Trailing guards are
/// conjoined into every loop they enclose, so the nesting stops as soon as
/// the trailing guard fails.
pub fn iter<A: Item>(k: impl Fn(A) -> Stm + 'static, s: Stream<A>) -> Stm {
    iter_with(Rc::new(k), s, None)
}

fn with_extra(grd: Exp, extra: &Option<Exp>) -> Exp {
    match extra {
        Some(e) => and(grd, e.clone()),
        None => grd,
    }
}

fn iter_flat<A: Item>(k: Consumer<A>, f: FlatRec<A>, extra: &Option<Exp>) -> Stm {
    let grd = with_extra(f.grd, extra);
    match f.producer {
        Producer::Unroll(e) => while_(grd, e.emit_rc(k)),
        Producer::For { upb, index } => new_index(int(0), move |i| {
            let i_read = crate::backend::dref(&i);
            while_(
                and(grd, i_read.lt_(upb)),
                seq(vec![index.at(i_read.clone(), k), incr(&i)]),
            )
        }),
    }
}

fn iter_with<A: Item>(k: Consumer<A>, s: Stream<A>, extra: Option<Exp>) -> Stm {
    match s {
        Stream::Init { init, body } => match init {
            StateInit::Cell(e) => newref(e, move |v| iter_with(k, body(Bound::Cell(v)), extra)),
            StateInit::Index(e) => {
                new_index(e, move |v| iter_with(k, body(Bound::Cell(v)), extra))
            }
            StateInit::Value(e) => letl(e, move |x| iter_with(k, body(Bound::Value(x)), extra)),
            StateInit::StaticArray(ty, data) => new_static_array(ty, data, move |a| {
                iter_with(k, body(Bound::Array(a)), extra)
            }),
        },
        Stream::Flat(f) => iter_flat(k, f, &extra),
        Stream::Nested(n) => {
            let t = with_extra(n.trailing, &extra);
            let inner = n.inner.clone();
            let t2 = t.clone();
            let outer_k: Consumer<Exp> =
                consumer(move |x| iter_with(k.clone(), inner(x), Some(t2.clone())));
            iter_flat(outer_k, n.outer, &Some(t))
        }
    }
}
