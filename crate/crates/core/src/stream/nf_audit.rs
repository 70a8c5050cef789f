//! Optional checking of the normal-form invariant after every raw
//! operation.
//!
//! When a check is active on the current thread (see [`audit_normal_forms`]),
//! each raw operation runs the normal-form checker on the stream it returns
//! and records any violation. Checking applies `Init` bodies and inner
//! builders, which themselves call raw operations; those nested calls are
//! not re-checked.

use std::cell::{Cell, RefCell};

use super::rep::{Item, Stream};
use super::shape::{check_normal_form, NormalFormError};

/// A normal-form violation produced by a raw operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub op: &'static str,
    pub error: NormalFormError,
}

/// What an audited computation observed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NfAudit {
    /// Number of raw-operation results checked.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

thread_local! {
    static ACTIVE: RefCell<Option<NfAudit>> = const { RefCell::new(None) };
    static CHECKING: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f`, checking the result of every raw operation it performs.
pub fn audit_normal_forms<R>(f: impl FnOnce() -> R) -> (R, NfAudit) {
    let prev = ACTIVE.with(|a| a.replace(Some(NfAudit::default())));
    let r = f();
    let audit = ACTIVE.with(|a| a.replace(prev)).unwrap_or_default();
    (r, audit)
}

/// Checks `s` if an audit is active; returns `s` unchanged.
pub(crate) fn audited<A: Item>(op: &'static str, s: Stream<A>) -> Stream<A> {
    let active = ACTIVE.with(|a| a.borrow().is_some());
    if active && !CHECKING.with(Cell::get) {
        CHECKING.with(|c| c.set(true));
        let res = check_normal_form(&s);
        CHECKING.with(|c| c.set(false));
        ACTIVE.with(|a| {
            if let Some(audit) = a.borrow_mut().as_mut() {
                audit.checked += 1;
                if let Err(error) = res {
                    audit.violations.push(Violation { op, error });
                }
            }
        });
    }
    s
}
