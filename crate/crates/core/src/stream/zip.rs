//! Zip elimination.
//!
//! Zipping never builds a pair of streams. `Init` nodes are pulled out of
//! both sides (left first); two linear flat streams run in lockstep; a
//! linear flat stream is fused into the other side by running its producer
//! inside the other side's consumer and conjoining its guard; otherwise the
//! side with the smaller nesting depth (the left one on a tie) is linearized
//! first and the zip is retried.

use std::rc::Rc;

use crate::backend::{and, dref, imin, incr, int, seq, MutVar};

use super::linearize::linearize;
use super::raw::{guard, map_raw, map_raw_};
use super::rep::*;
use super::shape::complexity;

/// Turns an indexed producer into an unrolling over the index cell `i`:
/// produce the item at `i`, then advance.
pub(crate) fn unroll_of_for<A: Item>(f: FlatRec<A>, i: MutVar) -> FlatRec<A> {
    match f.producer {
        Producer::Unroll(_) => f,
        Producer::For { upb, index } => FlatRec {
            producer: Producer::Unroll(Emitter::new(move |k| {
                seq(vec![index.at(dref(&i), k), incr(&i)])
            })),
            grd: and(f.grd, dref(&i).lt_(upb)),
            linear: f.linear,
        },
    }
}

fn zip_linear<A: Item, B: Item>(f1: FlatRec<A>, f2: FlatRec<B>) -> Stream<(A, B)> {
    let producer = match (f1.producer, f2.producer) {
        (Producer::For { upb: u1, index: i1 }, Producer::For { upb: u2, index: i2 }) => {
            Producer::For {
                upb: imin(u1, u2),
                index: Indexer::new(move |i, k: Consumer<(A, B)>| {
                    let (i2, ic) = (i2.clone(), i.clone());
                    i1.at(
                        i,
                        consumer(move |a: A| {
                            let k = k.clone();
                            i2.at(ic.clone(), consumer(move |b| k((a.clone(), b))))
                        }),
                    )
                }),
            }
        }
        (Producer::For { upb, index }, Producer::Unroll(e2)) => Producer::For {
            upb,
            index: Indexer::new(move |i, k: Consumer<(A, B)>| {
                let e2 = e2.clone();
                index.at(
                    i,
                    consumer(move |a: A| {
                        let k = k.clone();
                        e2.emit(move |b| k((a.clone(), b)))
                    }),
                )
            }),
        },
        (Producer::Unroll(e1), Producer::For { upb, index }) => Producer::For {
            upb,
            index: Indexer::new(move |i, k: Consumer<(A, B)>| {
                let e1 = e1.clone();
                index.at(
                    i,
                    consumer(move |b: B| {
                        let k = k.clone();
                        e1.emit(move |a| k((a, b.clone())))
                    }),
                )
            }),
        },
        (Producer::Unroll(e1), Producer::Unroll(e2)) => {
            Producer::Unroll(Emitter::new(move |k: Consumer<(A, B)>| {
                let e2 = e2.clone();
                e1.emit(move |a: A| {
                    let k = k.clone();
                    e2.emit(move |b| k((a.clone(), b)))
                })
            }))
        }
    };
    Stream::Flat(FlatRec {
        producer,
        grd: and(f1.grd, f2.grd),
        linear: true,
    })
}

/// Fuses the linear flat stream `f1` into `s2`: every item of `s2` pulls one
/// item from `f1`.
fn fuse_left<A: Item, B: Item>(f1: FlatRec<A>, s2: Stream<B>) -> Stream<(A, B)> {
    match f1.producer {
        Producer::For { .. } => Stream::Init {
            init: StateInit::Index(int(0)),
            body: Rc::new(move |b| fuse_left(unroll_of_for(f1.clone(), b.cell()), s2.clone())),
        },
        Producer::Unroll(e1) => {
            let paired = map_raw(
                true,
                move |b: B, k: Consumer<(A, B)>| e1.emit(move |a| k((a, b.clone()))),
                s2,
            );
            guard(f1.grd, paired)
        }
    }
}

/// Pairs the items of two streams in order, eliminating the zip.
pub fn zip_raw<A: Item, B: Item>(s1: Stream<A>, s2: Stream<B>) -> Stream<(A, B)> {
    super::nf_audit::audited("zip_raw", zip_nf(s1, s2))
}

fn zip_nf<A: Item, B: Item>(s1: Stream<A>, s2: Stream<B>) -> Stream<(A, B)> {
    match (s1, s2) {
        (Stream::Init { init, body }, s2) => Stream::Init {
            init,
            body: Rc::new(move |b| zip_raw(body(b), s2.clone())),
        },
        (s1, Stream::Init { init, body }) => Stream::Init {
            init,
            body: Rc::new(move |b| zip_raw(s1.clone(), body(b))),
        },
        (Stream::Flat(f1), Stream::Flat(f2)) if f1.linear && f2.linear => zip_linear(f1, f2),
        (Stream::Flat(f1), s2) if f1.linear => fuse_left(f1, s2),
        (s1, Stream::Flat(f2)) if f2.linear => map_raw_(|(b, a)| (a, b), fuse_left(f2, s1)),
        (s1, s2) => {
            if complexity(&s1).nesting_depth <= complexity(&s2).nesting_depth {
                zip_raw(linearize(s1), s2)
            } else {
                zip_raw(s1, linearize(s2))
            }
        }
    }
}
