//! Coinductive stateful skip streams and the core operations on them.
//!
//! A stream is its own observation: finished, or a step carrying an
//! optional item, the current state and a continuation that receives the
//! state and yields the rest of the stream. Continuations are evaluated on
//! demand, so infinite streams are ordinary values. Combinators that update
//! the state do so by passing a different state to the continuation.

use std::rc::Rc;

use super::value::Val;

/// The continuation of a step: applied to the state, yields the rest.
pub type Resume = Rc<dyn Fn(Val) -> OStream>;

/// A step function of an unrolling: from a state to an optional item and
/// the next state.
pub type Unrolling = Rc<dyn Fn(&Val) -> (Option<Val>, Val)>;

/// A state predicate.
pub type Pred = Rc<dyn Fn(&Val) -> bool>;

/// An accumulating map-filter function, from the state and an item to an
/// optional output and the new state.
pub type MapFilterFn = Rc<dyn Fn(&Val, &Val) -> (Option<Val>, Val)>;

/// A nested-stream builder, from the state and an outer item.
pub type FlatMapFn = Rc<dyn Fn(&Val, &Val) -> OStream>;

/// A state conversion.
pub type StateMap = Rc<dyn Fn(&Val) -> Val>;

/// The observation of a stream.
#[derive(Clone)]
pub enum OStream {
    Done,
    Step {
        item: Option<Val>,
        state: Val,
        resume: Resume,
    },
}

impl OStream {
    fn step(item: Option<Val>, state: Val, resume: impl Fn(Val) -> OStream + 'static) -> OStream {
        OStream::Step {
            item,
            state,
            resume: Rc::new(resume),
        }
    }

    /// The stream after this step, continuing from the step's own state.
    pub fn next(&self) -> Option<OStream> {
        match self {
            OStream::Done => None,
            OStream::Step { state, resume, .. } => Some(resume(state.clone())),
        }
    }

    pub fn is_done(&self) -> bool {
        matches!(self, OStream::Done)
    }
}

/// Boxes a closure as an [`Unrolling`].
pub fn unrolling(f: impl Fn(&Val) -> (Option<Val>, Val) + 'static) -> Unrolling {
    Rc::new(f)
}

/// Boxes a closure as a [`Pred`].
pub fn pred(f: impl Fn(&Val) -> bool + 'static) -> Pred {
    Rc::new(f)
}

/// Boxes a closure as a [`MapFilterFn`].
pub fn map_filter_fn(f: impl Fn(&Val, &Val) -> (Option<Val>, Val) + 'static) -> MapFilterFn {
    Rc::new(f)
}

/// Boxes a closure as a [`FlatMapFn`].
pub fn flat_map_fn(f: impl Fn(&Val, &Val) -> OStream + 'static) -> FlatMapFn {
    Rc::new(f)
}

/// Boxes a closure as a [`StateMap`].
pub fn state_map(f: impl Fn(&Val) -> Val + 'static) -> StateMap {
    Rc::new(f)
}

/// Applies `f` at every observation, starting from `z`; never finishes.
pub fn o_unroll(f: Unrolling, z: Val) -> OStream {
    let (item, z1) = f(&z);
    OStream::step(item, z1, move |z| o_unroll(f.clone(), z))
}

/// Extends the state with a new leftmost component `z`.
pub fn o_init(z: Val, s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item,
            state,
            resume,
        } => OStream::step(item, Val::pair(z, state), move |zz| {
            o_init(zz.fst().clone(), resume(zz.snd().clone()))
        }),
    }
}

/// Hides the leftmost state component; it keeps evolving privately.
pub fn o_abstract(s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item,
            state,
            resume,
        } => {
            let hidden = state.fst().clone();
            OStream::step(item, state.snd().clone(), move |z1| {
                o_abstract(resume(Val::pair(hidden.clone(), z1)))
            })
        }
    }
}

/// Re-shapes the state through a bijection `to`, with inverse `from`.
pub fn o_adjust(to: StateMap, from: StateMap, s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item,
            state,
            resume,
        } => OStream::step(item, to(&state), move |z2| {
            o_adjust(to.clone(), from.clone(), resume(from(&z2)))
        }),
    }
}

/// Finishes the stream as soon as `p` is false on the current state.
pub fn o_guard(p: Pred, s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item,
            state,
            resume,
        } => {
            if !p(&state) {
                return OStream::Done;
            }
            OStream::step(item, state, move |z| o_guard(p.clone(), resume(z)))
        }
    }
}

/// Transforms and filters items, possibly updating the state; skips pass
/// through with the state untouched.
pub fn o_map_filter(f: MapFilterFn, s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item,
            state,
            resume,
        } => {
            let (out, z) = match item {
                None => (None, state),
                Some(a) => f(&state, &a),
            };
            OStream::step(out, z, move |z| o_map_filter(f.clone(), resume(z)))
        }
    }
}

/// Replaces every item by the stream `f(z, a)`, run to completion over the
/// shared state before the outer stream resumes.
pub fn o_flat_map(f: FlatMapFn, s: OStream) -> OStream {
    match s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item: None,
            state,
            resume,
        } => OStream::step(None, state, move |z| o_flat_map(f.clone(), resume(z))),
        OStream::Step {
            item: Some(a),
            state,
            resume,
        } => {
            let inner = f(&state, &a);
            inner_step(f, inner, state, resume)
        }
    }
}

/// One observation of a running inner stream; `z` is the latest state and
/// `outer` the suspended outer stream.
fn inner_step(f: FlatMapFn, inner: OStream, z: Val, outer: Resume) -> OStream {
    match inner {
        OStream::Done => OStream::step(None, z, move |z| o_flat_map(f.clone(), outer(z))),
        OStream::Step {
            item,
            state,
            resume,
        } => OStream::step(item, state, move |z| {
            inner_step(f.clone(), resume(z.clone()), z, outer.clone())
        }),
    }
}

/// Pairs the items of two streams. When only one side produces, the step
/// skips and that side is retained as observed (its continuation ignores
/// the state it is given), so its item is paired later.
pub fn o_zip(s1: OStream, s2: OStream) -> OStream {
    let (
        OStream::Step {
            item: a1,
            state: z1,
            resume: t1,
        },
        OStream::Step {
            item: a2,
            state: z2,
            resume: t2,
        },
    ) = (s1, s2)
    else {
        return OStream::Done;
    };
    let z = Val::pair(z1.clone(), z2.clone());
    match (a1, a2) {
        (None, None) => OStream::step(None, z, move |zz| {
            o_zip(t1(zz.fst().clone()), t2(zz.snd().clone()))
        }),
        (Some(a1), None) => {
            let kept = OStream::Step {
                item: Some(a1),
                state: z1,
                resume: t1,
            };
            OStream::step(None, z, move |zz| o_zip(kept.clone(), t2(zz.snd().clone())))
        }
        (None, Some(a2)) => {
            let kept = OStream::Step {
                item: Some(a2),
                state: z2,
                resume: t2,
            };
            OStream::step(None, z, move |zz| o_zip(t1(zz.fst().clone()), kept.clone()))
        }
        (Some(a1), Some(a2)) => OStream::step(Some(Val::pair(a1, a2)), z, move |zz| {
            o_zip(t1(zz.fst().clone()), t2(zz.snd().clone()))
        }),
    }
}

/// Removes the skips of a stream that is not effectively ended. Deciding
/// whether a stream is effectively ended is replaced by probing: a run of
/// more than `fuel` consecutive skips is left in place (so a trace of the
/// result exhausts its fuel there), and a run of skips ending the stream is
/// kept as is.
pub fn o_noskip(s: OStream, fuel: usize) -> OStream {
    match &s {
        OStream::Done => OStream::Done,
        OStream::Step {
            item: Some(a),
            state,
            resume,
        } => {
            let resume = resume.clone();
            OStream::step(Some(a.clone()), state.clone(), move |z| {
                o_noskip(resume(z), fuel)
            })
        }
        OStream::Step { item: None, .. } => {
            let mut cur = s.clone();
            for _ in 0..=fuel {
                match &cur {
                    OStream::Done => return s,
                    OStream::Step { item: Some(_), .. } => return o_noskip(cur, fuel),
                    OStream::Step { .. } => {
                        cur = cur.next().expect("a step has a continuation");
                    }
                }
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(s: OStream, n: usize) -> Vec<Option<Val>> {
        let mut out = vec![];
        let mut cur = s;
        for _ in 0..n {
            match &cur {
                OStream::Done => break,
                OStream::Step { item, .. } => out.push(item.clone()),
            }
            cur = cur.next().unwrap();
        }
        out
    }

    fn count_from(n: i64) -> OStream {
        o_unroll(
            unrolling(|z| (Some(z.clone()), Val::Int(z.int() + 1))),
            Val::Int(n),
        )
    }

    #[test]
    fn unroll_counts() {
        let got = items(count_from(1), 4);
        assert_eq!(got, (1..=4).map(|v| Some(Val::Int(v))).collect::<Vec<_>>());
    }

    #[test]
    fn constant_skip_never_produces() {
        let s = o_unroll(unrolling(|z| (None, z.clone())), Val::Unit);
        assert!(items(s, 10).iter().all(Option::is_none));
    }

    #[test]
    fn zip_retains_the_producing_side() {
        // Left: 1, skip, 2, ...; right: skip, 9, 8, ...
        let left = o_unroll(
            unrolling(|z| {
                let i = z.int();
                let item = match i {
                    0 => Some(Val::Int(1)),
                    2 => Some(Val::Int(2)),
                    _ => None,
                };
                (item, Val::Int(i + 1))
            }),
            Val::Int(0),
        );
        let right = o_unroll(
            unrolling(|z| {
                let i = z.int();
                let item = match i {
                    1 => Some(Val::Int(9)),
                    2 => Some(Val::Int(8)),
                    _ => None,
                };
                (item, Val::Int(i + 1))
            }),
            Val::Int(0),
        );
        let got: Vec<Val> = items(o_zip(left, right), 10).into_iter().flatten().collect();
        assert_eq!(
            got,
            vec![
                Val::pair(Val::Int(1), Val::Int(9)),
                Val::pair(Val::Int(2), Val::Int(8))
            ]
        );
    }
}
