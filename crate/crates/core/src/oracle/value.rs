//! Host values: stream items and stream states.
//!
//! States are nested pairs of scalars, flags and optional components, so
//! structural equality is decidable and states can be printed in
//! counterexamples.

use std::fmt;
use std::rc::Rc;

/// A host value: a scalar, a pair, or an optional value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Unit,
    Int(i64),
    Bool(bool),
    Pair(Rc<Val>, Rc<Val>),
    Opt(Option<Rc<Val>>),
}

impl Val {
    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn some(a: Val) -> Val {
        Val::Opt(Some(Rc::new(a)))
    }

    pub fn none() -> Val {
        Val::Opt(None)
    }

    /// The first projection. Panics on a non-pair: states are built by the
    /// combinators themselves, so a shape mismatch is a bug.
    pub fn fst(&self) -> &Val {
        match self {
            Val::Pair(a, _) => a,
            other => panic!("expected a pair, found {other}"),
        }
    }

    /// The second projection.
    pub fn snd(&self) -> &Val {
        match self {
            Val::Pair(_, b) => b,
            other => panic!("expected a pair, found {other}"),
        }
    }

    pub fn int(&self) -> i64 {
        match self {
            Val::Int(v) => *v,
            other => panic!("expected an integer, found {other}"),
        }
    }

    pub fn bool(&self) -> bool {
        match self {
            Val::Bool(b) => *b,
            other => panic!("expected a boolean, found {other}"),
        }
    }

    pub fn opt(&self) -> Option<&Val> {
        match self {
            Val::Opt(o) => o.as_deref(),
            other => panic!("expected an optional value, found {other}"),
        }
    }

    /// A stable structural hash (FNV-1a over a pre-order encoding), used to
    /// derive pseudo-random function tables that are reproducible across
    /// runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        self.feed(&mut h);
        h
    }

    fn feed(&self, h: &mut u64) {
        let mut byte = |b: u8| {
            *h ^= b as u64;
            *h = h.wrapping_mul(0x0100_0000_01b3);
        };
        match self {
            Val::Unit => byte(0),
            Val::Int(v) => {
                byte(1);
                for b in v.to_le_bytes() {
                    byte(b);
                }
            }
            Val::Bool(b) => {
                byte(2);
                byte(*b as u8);
            }
            Val::Pair(a, b) => {
                byte(3);
                a.feed(h);
                b.feed(h);
            }
            Val::Opt(None) => byte(4),
            Val::Opt(Some(a)) => {
                byte(5);
                a.feed(h);
            }
        }
    }
}

impl From<i64> for Val {
    fn from(v: i64) -> Val {
        Val::Int(v)
    }
}

impl From<bool> for Val {
    fn from(b: bool) -> Val {
        Val::Bool(b)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Unit => write!(f, "()"),
            Val::Int(v) => write!(f, "{v}"),
            Val::Bool(b) => write!(f, "{b}"),
            Val::Pair(a, b) => write!(f, "({a}, {b})"),
            Val::Opt(None) => write!(f, "-"),
            Val::Opt(Some(a)) => write!(f, "+{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projections_and_display() {
        let v = Val::pair(Val::Int(1), Val::pair(Val::Bool(true), Val::none()));
        assert_eq!(v.fst(), &Val::Int(1));
        assert_eq!(v.snd().fst(), &Val::Bool(true));
        assert_eq!(v.to_string(), "(1, (true, -))");
    }

    #[test]
    fn fingerprint_is_structural() {
        let a = Val::pair(Val::Int(1), Val::Int(2));
        let b = Val::pair(Val::Int(1), Val::Int(2));
        let c = Val::pair(Val::Int(2), Val::Int(1));
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }
}
