//! Finite observations of streams and bounded equivalence checking.
//!
//! Strong equivalence compares the full step pattern: which steps skip,
//! which produce and what, and where the stream finishes. States are
//! compared too when the caller supplies the state isomorphism relating the
//! two sides; otherwise only items and skips are observed. Weak equivalence
//! compares the skip-free traces.

use std::fmt;

use serde::Serialize;

use super::stream::{OStream, StateMap};
use super::value::Val;

/// One observed event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Skip(Val),
    Emit(Val, Val),
    End,
    FuelExhausted,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Skip(z) => write!(f, "skip @ {z}"),
            Event::Emit(a, z) => write!(f, "emit {a} @ {z}"),
            Event::End => write!(f, "end"),
            Event::FuelExhausted => write!(f, "fuel exhausted"),
        }
    }
}

/// A finite prefix of a stream's observations. `End` and `FuelExhausted`
/// only ever appear last, and a trace never has more than `fuel` events.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    pub events: Vec<Event>,
}

impl Trace {
    /// The produced items, in order.
    pub fn items(&self) -> Vec<Val> {
        self.events
            .iter()
            .filter_map(|e| match e {
                Event::Emit(a, _) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    /// Whether the stream was seen to finish.
    pub fn ended(&self) -> bool {
        self.events.last() == Some(&Event::End)
    }

    /// The events as text, for reports.
    pub fn render(&self) -> Vec<String> {
        self.events.iter().map(|e| e.to_string()).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render().join("; "))
    }
}

/// Observes up to `fuel` events of `s`, the last of which is `End` if the
/// stream finished or `FuelExhausted` if the budget ran out first.
pub fn trace(s: &OStream, fuel: usize) -> Trace {
    let mut events = vec![];
    if fuel == 0 {
        return Trace { events };
    }
    let mut cur = s.clone();
    loop {
        if events.len() + 1 == fuel {
            events.push(match cur {
                OStream::Done => Event::End,
                _ => Event::FuelExhausted,
            });
            break;
        }
        match &cur {
            OStream::Done => {
                events.push(Event::End);
                break;
            }
            OStream::Step { item, state, .. } => {
                events.push(match item {
                    Some(a) => Event::Emit(a.clone(), state.clone()),
                    None => Event::Skip(state.clone()),
                });
            }
        }
        cur = cur.next().expect("a step has a continuation");
    }
    Trace { events }
}

/// Observes the skip-free version of `s`: up to `fuel` items, where a run of
/// more than `fuel` consecutive skips is reported as `FuelExhausted` (the
/// stream may be effectively ended, or may produce later).
pub fn noskip_trace(s: &OStream, fuel: usize) -> Trace {
    let mut events = vec![];
    if fuel == 0 {
        return Trace { events };
    }
    let mut cur = s.clone();
    let mut skips = 0;
    loop {
        if events.len() + 1 == fuel {
            events.push(match cur {
                OStream::Done => Event::End,
                _ => Event::FuelExhausted,
            });
            break;
        }
        match &cur {
            OStream::Done => {
                events.push(Event::End);
                break;
            }
            OStream::Step { item: Some(a), state, .. } => {
                skips = 0;
                events.push(Event::Emit(a.clone(), state.clone()));
            }
            OStream::Step { item: None, .. } => {
                skips += 1;
                if skips > fuel {
                    events.push(Event::FuelExhausted);
                    break;
                }
            }
        }
        cur = cur.next().expect("a step has a continuation");
    }
    Trace { events }
}

/// Runs a stream to completion and returns its items. Fails if more than
/// `max_steps` observations are needed.
pub fn run_items(s: &OStream, max_steps: usize) -> Result<Vec<Val>, usize> {
    let mut out = vec![];
    let mut cur = s.clone();
    for _ in 0..max_steps {
        match &cur {
            OStream::Done => return Ok(out),
            OStream::Step { item, .. } => {
                if let Some(a) = item {
                    out.push(a.clone());
                }
            }
        }
        cur = cur.next().expect("a step has a continuation");
    }
    Err(max_steps)
}

/// The equivalence being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

/// Where two traces diverge.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub lhs: Trace,
    pub rhs: Trace,
    pub index: usize,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &Trace| {
            t.events
                .get(self.index)
                .map(|e| e.to_string())
                .unwrap_or_else(|| "(nothing)".into())
        };
        write!(
            f,
            "diverge at event {}: lhs {} vs rhs {}\n  lhs {}\n  rhs {}",
            self.index,
            show(&self.lhs),
            show(&self.rhs),
            self.lhs,
            self.rhs
        )
    }
}

/// The outcome of a bounded equivalence check. `vacuous` is set when the
/// fuel allowed no observation at all.
#[derive(Clone, Debug)]
pub struct EquivVerdict {
    pub holds: bool,
    pub vacuous: bool,
    pub counterexample: Option<Counterexample>,
}

/// What of an event is compared.
#[derive(Clone)]
enum Observe {
    Items,
    /// Items of skip-free traces, where a stream found to skip for longer
    /// than the probing fuel counts as effectively ended, like a finished
    /// one: the two are weakly equivalent.
    SkipFreeItems,
    ItemsAndStates(StateMap),
}

fn same_event(a: &Event, b: &Event, obs: &Observe) -> bool {
    match (a, b, obs) {
        (Event::Skip(_), Event::Skip(_), Observe::Items) => true,
        (Event::Emit(x, _), Event::Emit(y, _), Observe::Items) => x == y,
        (Event::Skip(z1), Event::Skip(z2), Observe::ItemsAndStates(iso)) => &iso(z1) == z2,
        (Event::Emit(x, z1), Event::Emit(y, z2), Observe::ItemsAndStates(iso)) => {
            x == y && &iso(z1) == z2
        }
        (Event::Emit(x, _), Event::Emit(y, _), Observe::SkipFreeItems) => x == y,
        (Event::End | Event::FuelExhausted, Event::End | Event::FuelExhausted, Observe::SkipFreeItems) => true,
        (Event::End, Event::End, _) | (Event::FuelExhausted, Event::FuelExhausted, _) => true,
        _ => false,
    }
}

fn compare(lhs: Trace, rhs: Trace, obs: &Observe) -> EquivVerdict {
    let vacuous = lhs.events.is_empty() && rhs.events.is_empty();
    let n = lhs.events.len().max(rhs.events.len());
    for index in 0..n {
        let ok = match (lhs.events.get(index), rhs.events.get(index)) {
            (Some(a), Some(b)) => same_event(a, b, obs),
            _ => false,
        };
        if !ok {
            return EquivVerdict {
                holds: false,
                vacuous,
                counterexample: Some(Counterexample { lhs, rhs, index }),
            };
        }
    }
    EquivVerdict {
        holds: true,
        vacuous,
        counterexample: None,
    }
}

/// Checks `lhs` and `rhs` for strong or weak equivalence up to `fuel`
/// observations, comparing items, skips and termination (not states).
///
/// In weak mode a run of more than `fuel` skips is taken to mean the stream
/// is effectively ended, which is indistinguishable from finishing.
pub fn equiv_check(lhs: &OStream, rhs: &OStream, mode: Mode, fuel: usize) -> EquivVerdict {
    match mode {
        Mode::Strong => compare(trace(lhs, fuel), trace(rhs, fuel), &Observe::Items),
        Mode::Weak => compare(
            noskip_trace(lhs, fuel),
            noskip_trace(rhs, fuel),
            &Observe::SkipFreeItems,
        ),
    }
}

/// Strong equivalence that also compares states: every state of `lhs`,
/// mapped through `iso`, must equal the corresponding state of `rhs`.
pub fn strong_check_with_states(
    lhs: &OStream,
    rhs: &OStream,
    iso: StateMap,
    fuel: usize,
) -> EquivVerdict {
    compare(trace(lhs, fuel), trace(rhs, fuel), &Observe::ItemsAndStates(iso))
}

#[cfg(test)]
mod tests {
    use super::super::stream::*;
    use super::*;

    fn skip_then(items: Vec<Option<i64>>) -> OStream {
        let n = items.len() as i64;
        o_guard(
            pred(move |z| z.int() <= n),
            o_unroll(
                unrolling(move |z| {
                    let i = z.int();
                    let item = items.get(i as usize).cloned().flatten().map(Val::Int);
                    (item, Val::Int(i + 1))
                }),
                Val::Int(0),
            ),
        )
    }

    #[test]
    fn noskip_drops_interior_skips() {
        let s = skip_then(vec![None, Some(1), None, Some(2)]);
        let t = noskip_trace(&s, 10);
        assert_eq!(t.items(), vec![Val::Int(1), Val::Int(2)]);
        assert!(t.ended());
    }

    #[test]
    fn all_skip_exhausts_fuel() {
        let s = o_unroll(unrolling(|z| (None, z.clone())), Val::Unit);
        assert_eq!(
            noskip_trace(&s, 5).events.last(),
            Some(&Event::FuelExhausted)
        );
    }

    #[test]
    fn noskip_is_idempotent_on_traces() {
        let s = skip_then(vec![None, Some(1), None, None, Some(2), None]);
        let once = o_noskip(s.clone(), 20);
        let twice = o_noskip(once.clone(), 20);
        assert_eq!(trace(&once, 20), trace(&twice, 20));
        assert_eq!(trace(&once, 20).items(), vec![Val::Int(1), Val::Int(2)]);
    }

    #[test]
    fn strong_distinguishes_skips_weak_does_not() {
        let a = skip_then(vec![Some(1), Some(2)]);
        let b = skip_then(vec![None, Some(1), Some(2)]);
        assert!(!equiv_check(&a, &b, Mode::Strong, 20).holds);
        assert!(equiv_check(&a, &b, Mode::Weak, 20).holds);
        assert!(equiv_check(&a, &a, Mode::Strong, 20).holds);
    }

    #[test]
    fn zero_fuel_is_vacuous() {
        let a = skip_then(vec![Some(1)]);
        let v = equiv_check(&a, &a, Mode::Strong, 0);
        assert!(v.holds && v.vacuous);
    }
}
