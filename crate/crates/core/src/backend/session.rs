//! Fresh-name generation sessions.
//!
//! Every binder created by the statement builders draws its number from the
//! innermost active [`GenSession`] on the current thread. Two runs of the
//! same build program under sessions with equal seeds therefore produce
//! identical ASTs, and hence byte-identical C.

use std::cell::RefCell;

thread_local! {
    static COUNTERS: RefCell<Vec<u32>> = const { RefCell::new(Vec::new()) };
}

/// A scope that numbers fresh names starting after `seed`.
///
/// Sessions nest: the innermost one is used, and an inner session never
/// perturbs the counter of the outer one. A session is confined to the
/// thread that runs it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSession {
    seed: u32,
}

struct Pop;

impl Drop for Pop {
    fn drop(&mut self) {
        COUNTERS.with(|c| {
            c.borrow_mut().pop();
        });
    }
}

impl GenSession {
    /// A session whose first fresh name is numbered `seed + 1`.
    pub fn new(seed: u32) -> Self {
        GenSession { seed }
    }

    /// The seed this session was created with.
    pub fn seed(&self) -> u32 {
        self.seed
    }

    /// Runs `f` with this session active.
    pub fn run<R>(&self, f: impl FnOnce() -> R) -> R {
        COUNTERS.with(|c| c.borrow_mut().push(self.seed));
        let _pop = Pop;
        f()
    }
}

/// Runs `f` in a throw-away session; names created inside are discarded and
/// the enclosing session's counter is left untouched.
pub fn scratch<R>(f: impl FnOnce() -> R) -> R {
    GenSession::new(1_000_000).run(f)
}

/// Whether a session is active on this thread.
pub fn in_session() -> bool {
    COUNTERS.with(|c| !c.borrow().is_empty())
}

/// Draws the next number from the innermost session.
///
/// # Panics
/// Panics if no session is active: binders may only be created while code
/// is being generated.
pub(crate) fn fresh_id() -> u32 {
    COUNTERS.with(|c| {
        let mut c = c.borrow_mut();
        let top = c
            .last_mut()
            .expect("fresh name requested outside of a GenSession");
        *top += 1;
        *top
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counters_start_after_seed() {
        let ids = GenSession::new(10).run(|| (fresh_id(), fresh_id()));
        assert_eq!(ids, (11, 12));
    }

    #[test]
    fn nested_sessions_do_not_disturb_outer() {
        let ids = GenSession::new(0).run(|| {
            let a = fresh_id();
            let _ = scratch(|| (fresh_id(), fresh_id()));
            let b = fresh_id();
            (a, b)
        });
        assert_eq!(ids, (1, 2));
    }

    #[test]
    #[should_panic(expected = "outside of a GenSession")]
    fn fresh_outside_session_panics() {
        fresh_id();
    }
}
