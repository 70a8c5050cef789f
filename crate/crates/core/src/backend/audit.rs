//! Structural audits of generated programs.
//!
//! * Grammar audit: counts every node kind reached by a full walk. The
//!   grammar has no abstraction, application, tuple or record node, so the
//!   walk can only meet first-order constructs; the counts make that
//!   observable in reports.
//! * Allocation audit: arrays may only be allocated outside loops; scalar
//!   cells are stack locals and may appear anywhere.
//! * Hygiene audit: every variable occurrence is in scope of exactly one
//!   binder, and no name is bound twice anywhere in the function.

use std::collections::{BTreeMap, HashSet};

use super::ir::*;

/// Outcome of auditing one function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    /// Node kind → number of occurrences.
    pub node_counts: BTreeMap<&'static str, usize>,
    /// Human-readable descriptions of every violation found.
    pub violations: Vec<String>,
    /// Deepest loop nesting found.
    pub max_loop_depth: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Occurrences of a node kind.
    pub fn count(&self, kind: &str) -> usize {
        self.node_counts.get(kind).copied().unwrap_or(0)
    }
}

/// The node kinds the audit can report. Everything here is first-order.
pub const NODE_KINDS: &[&str] = &[
    "literal", "var-read", "arith/cmp/logic", "cond", "let", "newref", "dref", "assign", "incr",
    "decr", "if", "while", "seq", "array-op", "print", "unit", "return",
];

struct Auditor {
    report: AuditReport,
    bound: HashSet<Name>,
    scope: Vec<Name>,
    loop_depth: usize,
}

impl Auditor {
    fn bump(&mut self, kind: &'static str) {
        *self.report.node_counts.entry(kind).or_insert(0) += 1;
    }

    fn in_scope(&self, n: &Name) -> bool {
        self.scope.contains(n)
    }

    fn use_name(&mut self, n: &Name) {
        if !self.in_scope(n) {
            self.report
                .violations
                .push(format!("{n} used outside the scope of its binder"));
        }
    }

    fn bind(&mut self, n: Name) {
        if !self.bound.insert(n) {
            self.report.violations.push(format!("{n} bound more than once"));
        }
        self.scope.push(n);
    }

    fn exp(&mut self, e: &Exp) {
        match e.node() {
            ExpNode::Lit(_) => self.bump("literal"),
            ExpNode::Local(n) => {
                self.bump("var-read");
                self.use_name(n);
            }
            ExpNode::Deref(v) => {
                self.bump("dref");
                self.use_name(&v.name);
            }
            ExpNode::Unary(_, a) => {
                self.bump("arith/cmp/logic");
                self.exp(a);
            }
            ExpNode::Binary(_, a, b) => {
                self.bump("arith/cmp/logic");
                self.exp(a);
                self.exp(b);
            }
            ExpNode::Cond(c, t, f) => {
                self.bump("cond");
                self.exp(c);
                self.exp(t);
                self.exp(f);
            }
            ExpNode::ArrayGet(a, i) => {
                self.bump("array-op");
                self.use_name(&a.name);
                self.exp(i);
            }
            ExpNode::ArrayLen(a) => {
                self.bump("array-op");
                self.use_name(&a.name);
            }
        }
    }

    fn scoped(&mut self, n: Name, body: &Stm) {
        let mark = self.scope.len();
        self.bind(n);
        self.stm(body);
        self.scope.truncate(mark);
    }

    fn alloc_array(&mut self, var: &ArrVar) {
        self.bump("array-op");
        if self.loop_depth > 0 {
            self.report
                .violations
                .push(format!("array {} allocated inside a loop", var.name));
        }
    }

    fn stm(&mut self, s: &Stm) {
        match s {
            Stm::Unit => self.bump("unit"),
            Stm::Seq(items) => {
                self.bump("seq");
                // A binder's scope is its own body only; sequencing after a
                // binder does not extend the scope.
                for it in items {
                    self.stm(it);
                }
            }
            Stm::Let { name, init, body } => {
                self.bump("let");
                self.exp(init);
                self.scoped(*name, body);
            }
            Stm::NewRef { var, init, body } => {
                self.bump("newref");
                self.exp(init);
                self.scoped(var.name, body);
            }
            Stm::Assign(v, e) => {
                self.bump("assign");
                self.use_name(&v.name);
                self.exp(e);
            }
            Stm::Incr(v) => {
                self.bump("incr");
                self.use_name(&v.name);
            }
            Stm::Decr(v) => {
                self.bump("decr");
                self.use_name(&v.name);
            }
            Stm::If(c, t, e) => {
                self.bump("if");
                self.exp(c);
                self.stm(t);
                self.stm(e);
            }
            Stm::If1(c, t) => {
                self.bump("if");
                self.exp(c);
                self.stm(t);
            }
            Stm::While(c, body) => {
                self.bump("while");
                self.exp(c);
                self.loop_depth += 1;
                self.report.max_loop_depth = self.report.max_loop_depth.max(self.loop_depth);
                self.stm(body);
                self.loop_depth -= 1;
            }
            Stm::ArraySet(a, i, e) => {
                self.bump("array-op");
                self.use_name(&a.name);
                self.exp(i);
                self.exp(e);
            }
            Stm::NewArray { var, init, body } => {
                self.alloc_array(var);
                init.iter().for_each(|e| self.exp(e));
                self.scoped(var.name, body);
            }
            Stm::NewStaticArray { var, body, .. } => {
                // Static data lives in the data segment regardless of where
                // the declaration appears.
                self.bump("array-op");
                self.scoped(var.name, body);
            }
            Stm::NewUArray { var, body, .. } => {
                self.alloc_array(var);
                self.scoped(var.name, body);
            }
            Stm::Print(e) => {
                self.bump("print");
                self.exp(e);
            }
            Stm::Return(e) => {
                self.bump("return");
                self.exp(e);
            }
        }
    }
}

/// Audits a function body with its parameters in scope.
pub fn audit(f: &Function) -> AuditReport {
    let mut a = Auditor {
        report: AuditReport::default(),
        bound: HashSet::new(),
        scope: Vec::new(),
        loop_depth: 0,
    };
    for p in f.array_params() {
        a.bind(p.name);
    }
    a.stm(&f.body);
    a.report
}

/// Audits a closed statement.
pub fn audit_stm(s: &Stm) -> AuditReport {
    audit(&Function::new("body", vec![], s.clone()))
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::super::GenSession;
    use super::*;

    #[test]
    fn clean_program() {
        let s = GenSession::new(0).run(|| {
            newref(int(0), |v| seq(vec![while_(dref(&v).lt_(3), incr(&v)), ret(dref(&v))]))
        });
        let r = audit_stm(&s);
        assert!(r.is_clean(), "{:?}", r.violations);
        assert_eq!(r.count("while"), 1);
        assert_eq!(r.max_loop_depth, 1);
        assert!(r.node_counts.keys().all(|k| NODE_KINDS.contains(k)));
    }

    #[test]
    fn escaping_name_is_reported() {
        let mut leaked = None;
        let s = GenSession::new(0).run(|| {
            let a = letl(int(1), |t| {
                leaked = Some(t.clone());
                print(t)
            });
            seq(vec![a, print(leaked.clone().unwrap())])
        });
        let r = audit_stm(&s);
        assert_eq!(r.violations, vec!["t_1 used outside the scope of its binder".to_string()]);
    }

    #[test]
    fn duplicate_binder_is_reported() {
        let s = GenSession::new(0).run(|| letl(int(1), print));
        let r = audit_stm(&seq(vec![s.clone(), s]));
        assert!(r.violations.iter().any(|v| v.contains("bound more than once")));
    }

    #[test]
    fn array_in_loop_is_reported() {
        let s = GenSession::new(0).run(|| {
            while_(bool_(false), new_uarray(TypeRep::Int, 4, |_| skip()))
        });
        let r = audit_stm(&s);
        assert!(r.violations.iter().any(|v| v.contains("inside a loop")));
    }
}
