//! Linearization: turning any normal form into a linear flat stream.
//!
//! * Indexed producers get an explicit index cell.
//! * A non-linear flat producer is wrapped in a produced-flag loop that
//!   re-runs the producer until it yields an item or the guard fails.
//! * A nested stream becomes a state machine over a register `q`, after the
//!   inner stream is closure-converted: the inner builder is applied to the
//!   code reading a cell `xr` that holds the current outer item, and the
//!   inner `Init` spine is turned into cells allocated once up front plus a
//!   re-initialisation statement run whenever a new outer item arrives.
//!
//! The register takes the values 0 (finished), 3 (advance the outer
//! stream), 5 (an item was just produced) and 7 (advance the inner stream);
//! each activation adds 2 and loops while `(q & 2) != 0` and the trailing
//! guard holds, so it stops right after producing an item (7 → 5) or
//! finishing (0).

use std::rc::Rc;

use crate::backend::{
    and, assign, bool_, default_of, dref, if1, if_, int, newref, seq, while_, MutVar, Stm,
};

use super::rep::*;
use super::shape::{complexity, item_type};
use super::zip::unroll_of_for;

/// Converts a stream into a weakly equivalent normal form whose core is a
/// linear flat unrolling. Already linear unrollings are returned unchanged.
pub fn linearize<A: Item>(s: Stream<A>) -> Stream<A> {
    super::nf_audit::audited("linearize", linearize_nf(s))
}

fn linearize_nf<A: Item>(s: Stream<A>) -> Stream<A> {
    match s {
        Stream::Init { init, body } => Stream::Init {
            init,
            body: Rc::new(move |b| linearize(body(b))),
        },
        Stream::Flat(f) => linearize_flat(f),
        Stream::Nested(n) => linearize_nested(n),
    }
}

fn linearize_flat<A: Item>(f: FlatRec<A>) -> Stream<A> {
    match f.producer {
        Producer::For { .. } => Stream::Init {
            init: StateInit::Index(int(0)),
            body: Rc::new(move |b| linearize_flat(unroll_of_for(f.clone(), b.cell()))),
        },
        Producer::Unroll(_) if f.linear => Stream::Flat(f),
        Producer::Unroll(e) => {
            let g = f.grd.clone();
            let unr = Emitter::new(move |k: Consumer<A>| {
                let (e, g) = (e.clone(), g.clone());
                newref(bool_(true), move |p| {
                    let body = e.emit(move |x| seq(vec![assign(&p, bool_(false)), k(x)]));
                    while_(
                        dref(&p),
                        seq(vec![body, assign(&p, and(dref(&p), g.clone()))]),
                    )
                })
            });
            Stream::Flat(FlatRec {
                producer: Producer::Unroll(unr),
                grd: f.grd,
                linear: true,
            })
        }
    }
}

/// The pieces closure conversion hands to the state machine: the inner flat
/// stream (as an unrolling) and the statement that re-initialises its state.
type Converted<A> = Rc<dyn Fn(FlatRec<A>, Stm) -> Stream<A>>;

/// Walks the inner `Init` spine, allocating each cell once (with a default
/// value) and accumulating the statement that re-initialises it.
fn convert_spine<A: Item>(s: Stream<A>, reinit: Stm, k: Converted<A>) -> Stream<A> {
    match s {
        Stream::Init { init, body } => match init.clone() {
            StateInit::Cell(e) | StateInit::Index(e) => {
                let fresh = match &init {
                    StateInit::Index(_) => StateInit::Index(default_of(e.ty())),
                    _ => StateInit::Cell(default_of(e.ty())),
                };
                Stream::Init {
                    init: fresh,
                    body: Rc::new(move |b| {
                        let z = b.cell();
                        let reinit = seq(vec![reinit.clone(), assign(&z, e.clone())]);
                        convert_spine(body(Bound::Cell(z)), reinit, k.clone())
                    }),
                }
            }
            StateInit::Value(e) => Stream::Init {
                init: StateInit::Cell(default_of(e.ty())),
                body: Rc::new(move |b| {
                    let z = b.cell();
                    let reinit = seq(vec![reinit.clone(), assign(&z, e.clone())]);
                    convert_spine(body(Bound::Value(dref(&z))), reinit, k.clone())
                }),
            },
            StateInit::StaticArray(..) => Stream::Init {
                init,
                body: Rc::new(move |b| convert_spine(body(b), reinit.clone(), k.clone())),
            },
        },
        Stream::Flat(f) => match f.producer {
            Producer::For { .. } => Stream::Init {
                init: StateInit::Index(int(0)),
                body: Rc::new(move |b| {
                    let i = b.cell();
                    let reinit = seq(vec![reinit.clone(), assign(&i, int(0))]);
                    convert_spine(Stream::Flat(unroll_of_for(f.clone(), i)), reinit, k.clone())
                }),
            },
            Producer::Unroll(_) => k(f, reinit),
        },
        Stream::Nested(_) => panic!(
            "closure conversion expects a flat inner stream; deeper levels must be linearized first"
        ),
    }
}

/// Closure-converts an inner-stream builder: allocates the saved-item cell
/// `xr` (of type `ty`), applies `inner` to its contents, and hands the flat
/// core plus the re-initialisation statement to `k`.
pub fn closure_convert<A: Item>(
    ty: crate::backend::TypeRep,
    inner: InnerFn<A>,
    k: impl Fn(MutVar, FlatRec<A>, Stm) -> Stream<A> + 'static,
) -> Stream<A> {
    let k = Rc::new(k);
    Stream::Init {
        init: StateInit::Cell(default_of(ty)),
        body: Rc::new(move |b| {
            let xr = b.cell();
            let k = k.clone();
            convert_spine(
                inner(dref(&xr)),
                Stm::Unit,
                Rc::new(move |f, reinit| k(xr, f, reinit)),
            )
        }),
    }
}

fn linearize_nested<A: Item>(n: Nested<A>) -> Stream<A> {
    if let Producer::For { .. } = n.outer.producer {
        return Stream::Init {
            init: StateInit::Index(int(0)),
            body: Rc::new(move |b| {
                linearize_nested(Nested {
                    outer: unroll_of_for(n.outer.clone(), b.cell()),
                    ..n.clone()
                })
            }),
        };
    }
    let ty = item_type(&n.outer);
    // Deeper levels are linearized first so that the inner stream is flat.
    let inner: InnerFn<A> = if complexity(&(n.inner)(super::shape::probe_exp(ty))).nesting_depth > 0 {
        let f = n.inner.clone();
        Rc::new(move |x| linearize(f(x)))
    } else {
        n.inner.clone()
    };
    let Nested { outer, trailing, .. } = n;
    Stream::Init {
        init: StateInit::Cell(int(1)),
        body: Rc::new(move |b| {
            let q = b.cell();
            let (outer, trailing) = (outer.clone(), trailing.clone());
            closure_convert(ty, inner.clone(), move |xr, flat, reinit| {
                q_machine(q, xr, outer.clone(), flat, reinit, trailing.clone())
            })
        }),
    }
}

fn q_machine<A: Item>(
    q: MutVar,
    xr: MutVar,
    outer: FlatRec<crate::backend::Exp>,
    inner: FlatRec<A>,
    reinit: Stm,
    trailing: crate::backend::Exp,
) -> Stream<A> {
    let (Producer::Unroll(outer_unr), Producer::Unroll(inner_unr)) =
        (outer.producer.clone(), inner.producer.clone())
    else {
        unreachable!("indexed producers are converted before the state machine is built")
    };
    let (outer_grd, inner_grd) = (outer.grd.clone(), inner.grd.clone());
    let trailing_in = trailing.clone();
    let unr = Emitter::new(move |k: Consumer<A>| {
        let reinit = reinit.clone();
        let advance_outer = if_(
            outer_grd.clone(),
            outer_unr.emit(move |x| seq(vec![assign(&xr, x), reinit.clone(), assign(&q, int(7))])),
            assign(&q, int(0)),
        );
        let advance_inner = if_(
            inner_grd.clone(),
            inner_unr.emit(move |y| seq(vec![k(y), assign(&q, int(5))])),
            assign(&q, int(3)),
        );
        // The trailing guard is re-checked on every activation: it may fail
        // while the machine is still searching for an item.
        seq(vec![
            assign(&q, dref(&q) + 2),
            while_(
                and((dref(&q) & 2).ne_(0), trailing_in.clone()),
                seq(vec![
                    if1(dref(&q).eq_(3), advance_outer),
                    if1(dref(&q).eq_(7), advance_inner),
                ]),
            ),
        ])
    });
    Stream::Flat(FlatRec {
        producer: Producer::Unroll(unr),
        grd: and(dref(&q).ne_(0), trailing),
        linear: true,
    })
}
