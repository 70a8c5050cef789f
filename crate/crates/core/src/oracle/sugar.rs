//! The user-facing combinators defined on the semantic side, entirely in
//! terms of the core operations. These give the reference meaning of every
//! pipeline the code generator compiles.
//!
//! Producers keep a flag in their state that is cleared on the first skip,
//! and guard on it, so a guard only ever finishes an effectively ended
//! stream. Stateful transformers add their state with `init`, update only
//! that component, and hide it with `abstract`.

use std::rc::Rc;

use super::stream::*;
use super::value::Val;

fn int(v: i64) -> Val {
    Val::Int(v)
}

/// The flag component of a producer state `(counter, flag)`.
fn flag(z: &Val) -> bool {
    z.snd().bool()
}

/// The items of a host vector.
pub fn of_vec(items: Vec<Val>) -> OStream {
    let items = Rc::new(items);
    let u = unrolling(move |z| {
        let i = z.fst().int();
        match items.get(i as usize) {
            Some(a) if flag(z) => (Some(a.clone()), Val::pair(int(i + 1), true.into())),
            _ => (None, Val::pair(int(i), false.into())),
        }
    });
    o_guard(pred(flag), o_unroll(u, Val::pair(int(0), true.into())))
}

/// The items of a host integer slice.
pub fn of_ints(items: &[i64]) -> OStream {
    of_vec(items.iter().map(|&v| int(v)).collect())
}

/// `f(0), f(1), ..., f(upb)`: an inclusive upper bound.
pub fn pull(upb: i64, f: impl Fn(i64) -> Val + 'static) -> OStream {
    let u = unrolling(move |z| {
        let i = z.fst().int();
        if flag(z) && i <= upb {
            (Some(f(i)), Val::pair(int(i + 1), true.into()))
        } else {
            (None, Val::pair(int(i), false.into()))
        }
    });
    o_guard(pred(flag), o_unroll(u, Val::pair(int(0), true.into())))
}

/// `n, n+1, ...` (never ends).
pub fn iota(n: i64) -> OStream {
    o_unroll(unrolling(|z| (Some(z.clone()), int(z.int().wrapping_add(1)))), int(n))
}

/// `a ..= b`.
pub fn from_to(a: i64, b: i64) -> OStream {
    pull(b.wrapping_sub(a), move |i| int(a.wrapping_add(i)))
}

/// `n` unit items.
pub fn countdown(n: i64) -> OStream {
    let u = unrolling(|z| {
        let c = z.fst().int();
        if flag(z) && c > 0 {
            (Some(Val::Unit), Val::pair(int(c - 1), true.into()))
        } else {
            (None, Val::pair(int(c), false.into()))
        }
    });
    o_guard(pred(flag), o_unroll(u, Val::pair(int(n), true.into())))
}

/// Transforms every item.
pub fn map(f: impl Fn(&Val) -> Val + 'static, s: OStream) -> OStream {
    o_map_filter(map_filter_fn(move |z, a| (Some(f(a)), z.clone())), s)
}

/// Keeps the items satisfying `p`.
pub fn filter(p: impl Fn(&Val) -> bool + 'static, s: OStream) -> OStream {
    o_map_filter(
        map_filter_fn(move |z, a| (p(a).then(|| a.clone()), z.clone())),
        s,
    )
}

/// A stateful transformer: `init z0 ▹ map_filter f ▹ abstract`, where `f`
/// sees and updates only the added state component.
pub fn with_state(
    z0: Val,
    f: impl Fn(&Val, &Val) -> (Option<Val>, Val) + 'static,
    s: OStream,
) -> OStream {
    let mf = map_filter_fn(move |zz, a| {
        let (out, z1) = f(zz.fst(), a);
        (out, Val::pair(z1, zz.snd().clone()))
    });
    o_abstract(o_map_filter(mf, o_init(z0, s)))
}

/// At most the first `n` items, by zipping with a count-down.
pub fn take(n: i64, s: OStream) -> OStream {
    map(|p| p.snd().clone(), o_zip(countdown(n), s))
}

/// The longest prefix whose items satisfy `p`.
pub fn take_while(p: impl Fn(&Val) -> bool + 'static, s: OStream) -> OStream {
    let mf = map_filter_fn(move |zz, a| {
        let going = zz.fst().bool() && p(a);
        (going.then(|| a.clone()), Val::pair(going.into(), zz.snd().clone()))
    });
    let guarded = o_guard(pred(|zz| zz.fst().bool()), o_map_filter(mf, o_init(true.into(), s)));
    o_abstract(guarded)
}

/// All but the first `n` items.
pub fn drop(n: i64, s: OStream) -> OStream {
    with_state(
        int(n),
        |r, a| {
            let r = r.int();
            if r > 0 {
                (None, int(r - 1))
            } else {
                (Some(a.clone()), int(r))
            }
        },
        s,
    )
}

/// The items from the first one not satisfying `p` on.
pub fn drop_while(p: impl Fn(&Val) -> bool + 'static, s: OStream) -> OStream {
    with_state(
        true.into(),
        move |dropping, a| {
            if dropping.bool() && p(a) {
                (None, true.into())
            } else {
                (Some(a.clone()), false.into())
            }
        },
        s,
    )
}

/// Running accumulation.
pub fn scan(f: impl Fn(&Val, &Val) -> Val + 'static, z: Val, s: OStream) -> OStream {
    with_state(
        z,
        move |acc, a| {
            let acc = f(acc, a);
            (Some(acc.clone()), acc)
        },
        s,
    )
}

/// Stateful map: `f(state, x)` gives the new state and the output.
pub fn map_accum(f: impl Fn(&Val, &Val) -> (Val, Val) + 'static, z: Val, s: OStream) -> OStream {
    with_state(
        z,
        move |st, a| {
            let (ns, out) = f(st, a);
            (Some(out), ns)
        },
        s,
    )
}

/// Pairs two streams with `f`.
pub fn zip_with(f: impl Fn(&Val, &Val) -> Val + 'static, s1: OStream, s2: OStream) -> OStream {
    map(move |p| f(p.fst(), p.snd()), o_zip(s1, s2))
}

/// Replaces every item by a stream with its own private state; the outer
/// state is threaded through unchanged.
pub fn flat_map(f: impl Fn(&Val) -> OStream + 'static, s: OStream) -> OStream {
    let swap = state_map(|zz| Val::pair(zz.snd().clone(), zz.fst().clone()));
    o_flat_map(
        flat_map_fn(move |z, x| o_abstract(o_adjust(swap.clone(), swap.clone(), o_init(z.clone(), f(x))))),
        s,
    )
}

/// Consecutive differences; the first item passes through.
pub fn diff(s: OStream) -> OStream {
    with_state(
        int(0),
        |prev, a| (Some(int(a.int().wrapping_sub(prev.int()))), a.clone()),
        s,
    )
}

/// The largest run a byte can count.
pub const BYTE_MAX: i64 = 255;

/// Run-length encoding of a boolean stream; a pending count at the end of
/// the stream is dropped.
pub fn rle_encode(s: OStream) -> OStream {
    with_state(
        int(0),
        |zc, el| {
            let zeros = zc.int();
            if el.bool() {
                (Some(int(zeros)), int(0))
            } else if zeros + 1 == BYTE_MAX {
                (Some(int(BYTE_MAX)), int(0))
            } else {
                (None, int(zeros + 1))
            }
        },
        s,
    )
}

/// Run-length decoding.
pub fn rle_decode(s: OStream) -> OStream {
    flat_map(
        |el| {
            let el = el.int();
            let upb = el - (el == BYTE_MAX) as i64;
            pull(upb, move |i| Val::Bool(i == el))
        },
        s,
    )
}

/// A Mealy machine with state `z`: `tr(state, input)` gives the optional
/// output and the new state.
pub fn map_accum_filter(
    z: Val,
    tr: impl Fn(&Val, &Val) -> (Option<Val>, Val) + 'static,
    s: OStream,
) -> OStream {
    with_state(z, tr, s)
}

/// Splits a character stream into `(number, delimiter)` pairs.
pub fn parse_ints(s: OStream) -> OStream {
    map_accum_filter(
        int(0),
        |st, c| {
            let (st, c) = (st.int(), c.int());
            if (48..=57).contains(&c) {
                (None, int(st.wrapping_mul(10).wrapping_add(c - 48)))
            } else {
                (Some(Val::pair(int(st), int(c))), int(0))
            }
        },
        s,
    )
}

/// Aggregates `(value, delimiter)` pairs with a monoid while the delimiter
/// equals `sep`.
pub fn group_by_aggregate(
    sep: i64,
    unit: i64,
    op: impl Fn(i64, i64) -> i64 + 'static,
    s: OStream,
) -> OStream {
    map_accum_filter(
        int(unit),
        move |st, xc| {
            let ns = op(st.int(), xc.fst().int());
            let c = xc.snd().int();
            if c == sep {
                (None, int(ns))
            } else {
                (Some(Val::pair(int(ns), int(c))), int(unit))
            }
        },
        s,
    )
}

#[cfg(test)]
mod tests {
    use super::super::trace::run_items;
    use super::*;

    fn ints(s: OStream) -> Vec<i64> {
        run_items(&s, 1_000_000).unwrap().iter().map(Val::int).collect()
    }

    #[test]
    fn ex2_reference() {
        let s = take(
            10,
            filter(|x| x.int() % 17 > 7, map(|x| int(x.int() * x.int()), iota(1))),
        );
        let want: Vec<i64> = (1i64..).map(|x| x * x).filter(|x| x % 17 > 7).take(10).collect();
        assert_eq!(ints(s), want);
    }

    #[test]
    fn from_to_flat_map_prefix() {
        let s = flat_map(|x| from_to(x.int(), x.int() + 3), from_to(1, 5));
        assert_eq!(&ints(s)[..8], &[1, 2, 3, 4, 2, 3, 4, 5]);
    }

    #[test]
    fn diff_of_3_5_9() {
        assert_eq!(ints(diff(of_ints(&[3, 5, 9]))), vec![3, 2, 4]);
    }

    #[test]
    fn stateful_transformers() {
        assert_eq!(ints(take_while(|x| x.int() < 4, iota(0))), vec![0, 1, 2, 3]);
        assert_eq!(ints(drop(2, of_ints(&[1, 2, 3, 4]))), vec![3, 4]);
        assert_eq!(ints(drop_while(|x| x.int() < 3, of_ints(&[1, 5, 2, 4]))), vec![5, 2, 4]);
        let sum = |a: &Val, b: &Val| int(a.int() + b.int());
        assert_eq!(ints(scan(sum, int(0), of_ints(&[1, 2, 3]))), vec![1, 3, 6]);
        assert_eq!(ints(take(3, of_ints(&[7, 8]))), vec![7, 8]);
        assert!(ints(take(0, iota(0))).is_empty());
    }

    #[test]
    fn rle_examples() {
        let bits = |v: &[i64]| of_vec(v.iter().map(|&b| Val::Bool(b != 0)).collect());
        assert_eq!(ints(rle_encode(bits(&[0, 0, 1, 0, 1]))), vec![2, 1]);
        assert_eq!(ints(rle_encode(bits(&[0; 255]))), vec![255]);
        let decoded: Vec<bool> = run_items(&rle_decode(of_ints(&[2, 1, 255])), 100_000)
            .unwrap()
            .iter()
            .map(Val::bool)
            .collect();
        let mut want = vec![false, false, true, false, true];
        want.extend(std::iter::repeat_n(false, 255));
        assert_eq!(decoded, want);
    }

    #[test]
    fn grouping_of_text() {
        let text: Vec<i64> = b"1,2,3|40,5|6\0".iter().map(|&c| c as i64).collect();
        let s = parse_ints(of_ints(&text));
        let s = group_by_aggregate(44, 0, |a, b| a + b, s);
        let s = group_by_aggregate(124, i32::MIN as i64, i64::max, s);
        let got: Vec<i64> = run_items(&s, 10_000)
            .unwrap()
            .iter()
            .map(|p| p.fst().int())
            .collect();
        assert_eq!(got, vec![45]);
    }
}
