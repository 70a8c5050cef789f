//! The user-facing stream combinators, defined entirely in terms of the raw
//! interface, plus the showcase programs: a difference encoder, run-length
//! coding, and nested grouping-aggregation built from Mealy machines.
//!
//! Combinators on single-valued streams are methods of [`CStream`]:
//!
//! ```
//! use pipec_core::backend::{int, Function, GenSession, emit_function};
//! use pipec_core::sugar::iota;
//!
//! let body = GenSession::new(0).run(|| {
//!     iota(int(1))
//!         .map(|x| x.clone() * x)
//!         .filter(|x| (x.clone() % 17).gt_(7))
//!         .take(int(10))
//!         .sum()
//! });
//! let c = emit_function(&Function::new("fn", vec![], body));
//! assert!(c.contains("while (v_2 > 0) {"));
//! ```

use std::rc::Rc;

use crate::backend::{
    assign, bool_, decr, dref, if1, if_, incr, int, int_of_bool, letl, newref, newref_wide,
    print, ret, seq, skip, ArrVar, Exp, Lit, Stm, TypeRep,
};
use crate::stream::{
    filter_raw, flat_map_raw, guard, indexed, infinite, initializing, initializing_ref,
    initializing_static_array, iter, map_raw, map_raw_, zip_raw, Consumer, CStream, Emitter,
    Indexer, Item, Stream,
};

/// The natural numbers from `n` upwards (never ends).
pub fn iota(n: Exp) -> CStream {
    initializing_ref(n, |z| {
        infinite(Emitter::new(move |k| {
            letl(dref(&z), move |v| seq(vec![incr(&z), k(v)]))
        }))
    })
}

/// The integers `a ..= b`.
pub fn from_to(a: Exp, b: Exp) -> CStream {
    initializing_ref(a, move |z| {
        guard(
            dref(&z).le_(b.clone()),
            infinite(Emitter::new(move |k| {
                letl(dref(&z), move |v| seq(vec![incr(&z), k(v)]))
            })),
        )
    })
}

/// `n` unit items, counting a cell down to zero; the driver of [`CStream::take`].
pub fn countdown(n: Exp) -> Stream<()> {
    initializing_ref(n, |c| {
        guard(
            dref(&c).gt_(0),
            infinite(Emitter::new(move |k: Consumer<()>| seq(vec![decr(&c), k(())]))),
        )
    })
}

/// The elements of an array, in order.
pub fn of_arr(a: ArrVar) -> CStream {
    indexed(
        crate::backend::array_len(&a),
        Indexer::new(move |i, k| crate::backend::array_get(&a, i, move |x| k(x))),
    )
}

/// The elements of a host array, staged as a constant array.
pub fn of_int_array(data: &[i64]) -> CStream {
    let lits = data.iter().map(|&v| Lit::Int(v)).collect();
    initializing_static_array(TypeRep::Int, lits, of_arr)
}

/// The items `f(0) ..= f(upb)`: `upb` is an inclusive upper bound.
pub fn pull_array<A: Item>(upb: Exp, f: impl Fn(Exp, Consumer<A>) -> Stm + 'static) -> Stream<A> {
    indexed(upb + 1, Indexer::new(f))
}

/// Pairs the items of two streams with `f`.
pub fn zip_with<A: Item, B: Item>(
    f: impl Fn(A, B) -> Exp + 'static,
    s1: Stream<A>,
    s2: Stream<B>,
) -> CStream {
    map_raw_(move |(a, b)| f(a, b), zip_raw(s1, s2))
}

/// A monoid on code values: `op` associative, `unit` its identity.
#[derive(Clone)]
pub struct Monoid {
    pub unit: Exp,
    pub op: Rc<dyn Fn(Exp, Exp) -> Exp>,
}

impl Monoid {
    pub fn new(unit: Exp, op: impl Fn(Exp, Exp) -> Exp + 'static) -> Self {
        Monoid {
            unit,
            op: Rc::new(op),
        }
    }
}

/// The continuation of a Mealy-machine transition: the optional output and
/// the new state.
pub type MealyK<B> = Rc<dyn Fn(Option<B>, Exp) -> Stm>;

/// A Mealy machine with state initialised to `z`: for each input, `tr`
/// receives the current state and the input and must call its continuation
/// exactly once with the optional output and the new state.
pub fn map_accum_filter<A: Item, B: Item>(
    z: Exp,
    tr: impl Fn(Exp, A, MealyK<B>) -> Stm + 'static,
    st: Stream<A>,
) -> Stream<B> {
    let tr = Rc::new(tr);
    initializing_ref(z, move |s| {
        let tr = tr.clone();
        map_raw(
            false,
            move |c: A, k: Consumer<B>| {
                let tr = tr.clone();
                letl(dref(&s), move |os| {
                    let k = k.clone();
                    tr(
                        os,
                        c.clone(),
                        Rc::new(move |out: Option<B>, ns: Exp| match out {
                            None => assign(&s, ns),
                            Some(b) => seq(vec![assign(&s, ns), k(b)]),
                        }),
                    )
                })
            },
            st.clone(),
        )
    })
}

/// Splits a character stream into numbers: every non-digit ends the current
/// number and is emitted with it as `(number, delimiter)`.
pub fn parse_ints(st: CStream) -> Stream<(Exp, Exp)> {
    map_accum_filter(
        int(0),
        |s, c: Exp, k: MealyK<(Exp, Exp)>| {
            if_(
                c.ge_(48).and(c.le_(57)),
                k(None, int(10) * s.clone() + (c.clone() - 48)),
                k(Some((s, c)), int(0)),
            )
        },
        st,
    )
}

/// Aggregates values with the monoid until the delimiter differs from
/// `sep`; then emits the aggregate with that delimiter and restarts.
pub fn group_by_aggregate(sep: Exp, m: Monoid, st: Stream<(Exp, Exp)>) -> Stream<(Exp, Exp)> {
    let unit = m.unit.clone();
    map_accum_filter(
        unit,
        move |s, (x, c): (Exp, Exp), k: MealyK<(Exp, Exp)>| {
            let (sep, m) = (sep.clone(), m.clone());
            letl((m.op)(s, x), move |ns| {
                if_(
                    c.eq_(sep.clone()),
                    k(None, ns.clone()),
                    k(Some((ns, c.clone())), m.unit.clone()),
                )
            })
        },
        st,
    )
}

/// The largest representable 32-bit integer's negation: the unit of `max`.
pub const INT32_MIN: i64 = -2_147_483_648;

/// The largest run a byte can count.
pub const BYTE_MAX: i64 = 255;

impl CStream {
    /// Transforms every item; the result is let-bound once.
    pub fn map(self, f: impl Fn(Exp) -> Exp + 'static) -> CStream {
        map_raw(true, move |x, k: Consumer<Exp>| letl(f(x), move |v| k(v)), self)
    }

    /// Transforms every item by substitution, without a let-binding.
    pub fn map_pure(self, f: impl Fn(Exp) -> Exp + 'static) -> CStream {
        map_raw_(f, self)
    }

    /// Keeps the items satisfying `p`.
    pub fn filter(self, p: impl Fn(&Exp) -> Exp + 'static) -> CStream {
        filter_raw(p, self)
    }

    /// At most the first `n` items, by zipping with a count-down stream.
    pub fn take(self, n: Exp) -> CStream {
        map_raw_(|((), x)| x, zip_raw(countdown(n), self))
    }

    /// The longest prefix whose items satisfy `p`; a monotone termination
    /// flag ends the stream at the first failing item.
    pub fn take_while(self, p: impl Fn(&Exp) -> Exp + 'static) -> CStream {
        let p = Rc::new(p);
        initializing_ref(bool_(true), move |zr| {
            let p = p.clone();
            guard(
                dref(&zr),
                map_raw(
                    false,
                    move |e: Exp, k: Consumer<Exp>| if_(p(&e), k(e), assign(&zr, bool_(false))),
                    self.clone(),
                ),
            )
        })
    }

    /// All but the first `n` items.
    pub fn drop(self, n: Exp) -> CStream {
        initializing_ref(n, move |r| {
            map_raw(
                false,
                move |e: Exp, k: Consumer<Exp>| if_(dref(&r).gt_(0), decr(&r), k(e)),
                self.clone(),
            )
        })
    }

    /// The items from the first one not satisfying `p` on.
    pub fn drop_while(self, p: impl Fn(&Exp) -> Exp + 'static) -> CStream {
        let p = Rc::new(p);
        initializing_ref(bool_(true), move |dropping| {
            let p = p.clone();
            map_raw(
                false,
                move |e: Exp, k: Consumer<Exp>| {
                    if_(
                        dref(&dropping).and(p(&e)),
                        skip(),
                        seq(vec![assign(&dropping, bool_(false)), k(e)]),
                    )
                },
                self.clone(),
            )
        })
    }

    /// Running accumulation: emits `f(acc, x)` after each item.
    pub fn scan(self, f: impl Fn(Exp, Exp) -> Exp + 'static, z: Exp) -> CStream {
        let f = Rc::new(f);
        initializing_ref(z, move |acc| {
            let f = f.clone();
            map_raw(
                true,
                move |e: Exp, k: Consumer<Exp>| {
                    seq(vec![
                        assign(&acc, f(dref(&acc), e)),
                        letl(dref(&acc), move |v| k(v)),
                    ])
                },
                self.clone(),
            )
        })
    }

    /// Stateful map: `f(state, x)` gives the new state and the output.
    pub fn map_accum(self, f: impl Fn(Exp, Exp) -> (Exp, Exp) + 'static, z: Exp) -> CStream {
        let f = Rc::new(f);
        initializing_ref(z, move |s| {
            let f = f.clone();
            map_raw(
                true,
                move |e: Exp, k: Consumer<Exp>| {
                    let (ns, out) = f(dref(&s), e);
                    letl(out, move |o| seq(vec![assign(&s, ns.clone()), k(o)]))
                },
                self.clone(),
            )
        })
    }

    /// Replaces every item by a stream; the inner stream's shape must not
    /// depend on the item.
    pub fn flat_map<B: Item>(self, f: impl Fn(Exp) -> Stream<B> + 'static) -> Stream<B> {
        flat_map_raw(f, self)
    }

    /// Consecutive differences; the first item passes through.
    pub fn diff(self) -> CStream {
        initializing_ref(int(0), move |z| {
            map_raw(
                true,
                move |e: Exp, k: Consumer<Exp>| {
                    letl(e.clone() - dref(&z), move |v| seq(vec![assign(&z, e.clone()), k(v)]))
                },
                self.clone(),
            )
        })
    }

    /// Run-length encoding of a boolean stream: each `true` emits the count
    /// of zeros before it; a run of 255 zeros emits 255 and restarts the
    /// count. A pending count at the end of the stream is dropped.
    pub fn rle_encode(self) -> CStream {
        initializing_ref(int(0), move |zc| {
            map_raw(
                false,
                move |el: Exp, k: Consumer<Exp>| {
                    let k = k.clone();
                    letl(dref(&zc), move |zeros| {
                        if_(
                            el.clone(),
                            seq(vec![assign(&zc, int(0)), k(zeros.clone())]),
                            seq(vec![
                                assign(&zc, zeros + 1),
                                if1(
                                    dref(&zc).eq_(BYTE_MAX),
                                    seq(vec![assign(&zc, int(0)), k(int(BYTE_MAX))]),
                                ),
                            ]),
                        )
                    })
                },
                self.clone(),
            )
        })
    }

    /// Run-length decoding: `n < 255` becomes `n` falses and one true; 255
    /// becomes 255 falses.
    pub fn rle_decode(self) -> CStream {
        self.flat_map(|el| {
            initializing(el.clone() - int_of_bool(el.eq_(BYTE_MAX)), move |el1| {
                let el = el.clone();
                pull_array(el1, move |i, k: Consumer<Exp>| k(i.eq_(el.clone())))
            })
        })
    }

    /// Left fold with a plain (`int`) accumulator; returns the result.
    pub fn fold(self, f: impl Fn(Exp, Exp) -> Exp + 'static, z: Exp) -> Stm {
        newref(z, move |acc| {
            seq(vec![
                iter(move |x| assign(&acc, f(dref(&acc), x)), self),
                ret(dref(&acc)),
            ])
        })
    }

    /// Left fold with a wide (`int64_t`) accumulator; returns the result.
    pub fn fold_long(self, f: impl Fn(Exp, Exp) -> Exp + 'static, z: Exp) -> Stm {
        newref_wide(z, move |acc| {
            seq(vec![
                iter(move |x| assign(&acc, f(dref(&acc), x)), self),
                ret(dref(&acc)),
            ])
        })
    }

    /// Sum with a plain accumulator.
    pub fn sum(self) -> Stm {
        self.fold(|a, x| a + x, int(0))
    }

    /// Sum with a wide accumulator.
    pub fn sum_long(self) -> Stm {
        self.fold_long(|a, x| a + x, int(0))
    }

    /// Runs the stream, feeding every item to `k`.
    pub fn iter(self, k: impl Fn(Exp) -> Stm + 'static) -> Stm {
        iter(k, self)
    }

    /// Prints every item.
    pub fn print_all(self) -> Stm {
        iter(print, self)
    }
}
