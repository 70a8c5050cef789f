//! Linearization on the semantic side: turning a guarded unrolling, or a
//! nesting of two, into a single guarded unrolling that skips only once the
//! stream is effectively ended.
//!
//! Whether a state is effectively ended is undecidable in general; it is
//! approximated by probing: a state is taken as ended when the unrolling
//! skips `fuel` times in a row from it.

use std::rc::Rc;

use super::stream::*;
use super::value::Val;

/// Whether `u` skips `fuel` times in a row starting from `z`.
pub fn probably_ended(u: &Unrolling, z: &Val, fuel: usize) -> bool {
    let mut z = z.clone();
    for _ in 0..fuel {
        let (a, z1) = u(&z);
        if a.is_some() {
            return false;
        }
        z = z1;
    }
    true
}

/// The linear version `u'` of a guarded unrolling `u` (guard `g`): after a
/// skip it keeps stepping until an item appears, the guard fails, or the
/// state is (probably) effectively ended.
pub fn o_linearize_flat(u: Unrolling, g: Pred, fuel: usize) -> Unrolling {
    unrolling(move |z| {
        let mut z = z.clone();
        // Bounded: a state that is not probably-ended produces within `fuel`
        // steps, so the loop cannot run longer than that.
        for _ in 0..=fuel {
            let (a, z1) = u(&z);
            if a.is_some() || probably_ended(&u, &z1, fuel) || !g(&z1) {
                return (a, z1);
            }
            z = z1;
        }
        u(&z)
    })
}

/// The parameters of an inner stream, computed from the outer item and the
/// state at the time the item is produced. The inner stream is
/// `unroll u z ▹ guard g ▹ abstract`, whose state is a pair of a private
/// component and the shared outer state.
#[derive(Clone)]
pub struct InnerSpec {
    pub u: Unrolling,
    pub z: Val,
    pub g: Pred,
}

/// Builds the inner stream's parameters from the outer item and state.
pub type InnerBuilder = Rc<dyn Fn(&Val, &Val) -> InnerSpec>;

/// A nested pipeline: outer unrolling and guard, inner-stream builder and
/// trailing guard.
#[derive(Clone)]
pub struct NestedSpec {
    pub outer: Unrolling,
    pub z1: Val,
    pub g1: Pred,
    pub inner: InnerBuilder,
    pub g3: Pred,
}

impl NestedSpec {
    /// The pipeline built with `flat_map`.
    pub fn as_flat_map(&self) -> OStream {
        let inner = self.inner.clone();
        let outer = o_guard(self.g1.clone(), o_unroll(self.outer.clone(), self.z1.clone()));
        let nested = o_flat_map(
            flat_map_fn(move |z, x| {
                let spec = inner(x, z);
                o_abstract(o_guard(spec.g, o_unroll(spec.u, spec.z)))
            }),
            outer,
        );
        o_guard(self.g3.clone(), nested)
    }
}

/// The linear normal form of a nested pipeline: an unrolling `u0` over the
/// state `(saved, z)`, where `saved` is either nothing (the outer stream is
/// to be advanced) or the running inner stream's configuration `((x, zc),
/// zp)` — the outer item and the state it was produced in, from which the
/// inner unrolling and guard are rebuilt, and the private inner state.
#[derive(Clone)]
pub struct Linearized {
    pub u0: Unrolling,
    pub z0: Val,
    pub g0: Pred,
}

impl Linearized {
    /// `unroll u0 z0 ▹ guard g0 ▹ abstract`.
    pub fn stream(&self) -> OStream {
        o_abstract(o_guard(self.g0.clone(), o_unroll(self.u0.clone(), self.z0.clone())))
    }
}

/// Linearizes a nested pipeline whose inner stream is linear.
pub fn o_linearize_nested(spec: &NestedSpec, fuel: usize) -> Linearized {
    let s = spec.clone();
    let u0 = unrolling(move |st| {
        let (mut saved, mut z) = (st.fst().clone(), st.snd().clone());
        // Each iteration either returns or makes progress in the outer or
        // the inner stream; the bound only protects against streams that
        // skip for longer than the probing fuel.
        for _ in 0..(fuel + 1) * (fuel + 1) {
            match saved.opt().cloned() {
                None => {
                    let (a, z1) = (s.outer)(&z);
                    match a {
                        None => {
                            if !(s.g1)(&z1) || probably_ended(&s.outer, &z1, fuel) {
                                return (None, Val::pair(Val::none(), z1));
                            }
                            z = z1;
                        }
                        Some(x) => {
                            if !(s.g1)(&z1) {
                                return (None, Val::pair(Val::none(), z1));
                            }
                            let inner = (s.inner)(&x, &z1);
                            let conf = Val::pair(x, z1);
                            saved = Val::some(Val::pair(conf, inner.z.fst().clone()));
                            z = inner.z.snd().clone();
                        }
                    }
                }
                Some(cfg) => {
                    let (conf, zp) = (cfg.fst(), cfg.snd());
                    let inner = (s.inner)(conf.fst(), conf.snd());
                    let (b, zz) = (inner.u)(&Val::pair(zp.clone(), z.clone()));
                    let running = Val::some(Val::pair(conf.clone(), zz.fst().clone()));
                    let z1 = zz.snd().clone();
                    if !(inner.g)(&zz) {
                        saved = Val::none();
                        z = z1;
                        continue;
                    }
                    match b {
                        Some(y) => return (Some(y), Val::pair(running, z1)),
                        None if probably_ended(&inner.u, &zz, fuel) => {
                            return (None, Val::pair(running, z1));
                        }
                        None => {
                            saved = running;
                            z = z1;
                        }
                    }
                }
            }
        }
        (None, Val::pair(saved, z))
    });
    let (g1, g3) = (spec.g1.clone(), spec.g3.clone());
    Linearized {
        u0,
        z0: Val::pair(Val::none(), spec.z1.clone()),
        g0: pred(move |st| g1(st.snd()) && g3(st.snd())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::trace::*;
    use super::*;

    /// `u_nm` over `(x, y, w)`: counts from x to y, then skips with the flag
    /// cleared.
    fn u_nm() -> Unrolling {
        unrolling(|z| {
            let (x, y, w) = (z.fst().int(), z.snd().fst().int(), z.snd().snd().bool());
            if x <= y && w {
                (
                    Some(Val::Int(x)),
                    Val::pair(Val::Int(x + 1), Val::pair(Val::Int(y), Val::Bool(w))),
                )
            } else {
                (None, Val::pair(Val::Int(x), Val::pair(Val::Int(y), Val::Bool(false))))
            }
        })
    }

    fn xyw(x: i64, y: i64) -> Val {
        Val::pair(Val::Int(x), Val::pair(Val::Int(y), Val::Bool(true)))
    }

    #[test]
    fn u_nm_counts_then_skips_forever() {
        let s = o_unroll(u_nm(), xyw(1, 3));
        let t = trace(&s, 8);
        assert_eq!(t.items(), vec![Val::Int(1), Val::Int(2), Val::Int(3)]);
        assert!(matches!(&t.events[3], Event::Skip(z) if !z.snd().snd().bool()));
    }

    #[test]
    fn linearized_filter_has_no_interior_skips() {
        // A counter keeping only even numbers.
        let u = unrolling(|z| {
            let n = z.int();
            ((n % 2 == 0).then_some(Val::Int(n)), Val::Int(n + 1))
        });
        let lin = o_linearize_flat(u, pred(|_| true), 10);
        let t = trace(&o_unroll(lin, Val::Int(1)), 4);
        assert_eq!(t.items(), vec![Val::Int(2), Val::Int(4), Val::Int(6)]);
    }

    fn ex_nested() -> NestedSpec {
        // from_to 1 5 |> flat_map (fun x -> from_to x (x + 3)), private
        // inner state (x, y, w), shared state unit.
        NestedSpec {
            outer: unrolling(move |z| {
                let (a, z1) = u_nm()(z);
                (a, z1)
            }),
            z1: xyw(1, 5),
            g1: pred(|z| z.snd().snd().bool()),
            inner: Rc::new(|x, z| InnerSpec {
                u: unrolling(|zz| {
                    let (a, zp) = u_nm()(zz.fst());
                    (a, Val::pair(zp, zz.snd().clone()))
                }),
                z: Val::pair(xyw(x.int(), x.int() + 3), z.clone()),
                g: pred(|zz| zz.fst().snd().snd().bool()),
            }),
            g3: pred(|_| true),
        }
    }

    #[test]
    fn flat_map_prefix() {
        let t = noskip_trace(&ex_nested().as_flat_map(), 9);
        let want: Vec<Val> = [1, 2, 3, 4, 2, 3, 4, 5].iter().map(|&v| Val::Int(v)).collect();
        assert_eq!(t.items(), want);
    }

    #[test]
    fn nested_linearization_is_weakly_equivalent() {
        let spec = ex_nested();
        let lin = o_linearize_nested(&spec, 20);
        let v = equiv_check(&spec.as_flat_map(), &lin.stream(), Mode::Weak, 40);
        assert!(v.holds, "{}", v.counterexample.unwrap());
        // The linear version has no interior skips.
        let t = trace(&lin.stream(), 40);
        let first_skip = t.events.iter().position(|e| matches!(e, Event::Skip(_)));
        let last_emit = t.events.iter().rposition(|e| matches!(e, Event::Emit(..)));
        assert!(first_skip.is_none() || first_skip > last_emit);
    }

    #[test]
    fn empty_inner_linearizes_to_empty() {
        let mut spec = ex_nested();
        spec.inner = Rc::new(|x, z| InnerSpec {
            u: unrolling(|zz| (None, zz.clone())),
            z: Val::pair(x.clone(), z.clone()),
            g: pred(|_| false),
        });
        let lin = o_linearize_nested(&spec, 20);
        assert!(noskip_trace(&lin.stream(), 20).items().is_empty());
        assert!(equiv_check(&spec.as_flat_map(), &lin.stream(), Mode::Weak, 20).holds);
    }
}
