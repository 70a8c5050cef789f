//! Deterministic C pretty-printer.
//!
//! Layout is fixed: two-space indentation, one statement per line, braces on
//! the line of the controlling statement. Nested binary operands are always
//! parenthesised and conditional expressions carry their own parentheses, so
//! no precedence reasoning is needed when reading the output. Array accesses
//! are unchecked in the emitted code.

use std::fmt::Write as _;

use super::ir::*;

fn c_type(ty: TypeRep, wide: bool) -> &'static str {
    match ty {
        TypeRep::Bool => "bool",
        TypeRep::Int if wide => "int64_t",
        TypeRep::Int => "int",
        TypeRep::Float => "double",
        TypeRep::Unit => "void",
    }
}

fn c_lit(l: &Lit) -> String {
    match l {
        Lit::Bool(b) => b.to_string(),
        Lit::Int(v) => v.to_string(),
        Lit::Float(v) => {
            let s = format!("{v:?}");
            if s.contains(['.', 'e', 'E', 'n', 'i']) {
                s
            } else {
                format!("{s}.0")
            }
        }
        Lit::Unit => "0".into(),
    }
}

/// Renders an expression in operand position (parenthesised if compound).
fn operand(e: &Exp, out: &mut String) {
    match e.node() {
        ExpNode::Binary(..) => {
            out.push('(');
            exp(e, out);
            out.push(')');
        }
        ExpNode::Lit(Lit::Int(v)) if *v < 0 => {
            let _ = write!(out, "({v})");
        }
        ExpNode::Lit(Lit::Float(v)) if *v < 0.0 => {
            let _ = write!(out, "({})", c_lit(&Lit::Float(*v)));
        }
        _ => exp(e, out),
    }
}

fn exp(e: &Exp, out: &mut String) {
    match e.node() {
        ExpNode::Lit(l) => out.push_str(&c_lit(l)),
        ExpNode::Local(n) => {
            let _ = write!(out, "{n}");
        }
        ExpNode::Deref(v) => {
            let _ = write!(out, "{}", v.name);
        }
        ExpNode::Unary(op, a) => match op {
            UnOp::Not => {
                out.push('!');
                operand(a, out);
            }
            UnOp::Neg => {
                out.push('-');
                operand(a, out);
            }
            UnOp::FloatOfInt => {
                out.push_str("((double) ");
                operand(a, out);
                out.push(')');
            }
            UnOp::TruncToInt => {
                out.push_str("((int) ");
                operand(a, out);
                out.push(')');
            }
        },
        ExpNode::Binary(op, a, b) => {
            operand(a, out);
            let _ = write!(out, " {} ", op.symbol());
            operand(b, out);
        }
        ExpNode::Cond(c, t, f) => {
            out.push('(');
            exp(c, out);
            out.push_str(" ? ");
            operand(t, out);
            out.push_str(" : ");
            operand(f, out);
            out.push(')');
        }
        ExpNode::ArrayGet(a, i) => {
            let _ = write!(out, "{}[", a.name);
            exp(i, out);
            out.push(']');
        }
        ExpNode::ArrayLen(a) => match a.len {
            ArrLen::Param => {
                let _ = write!(out, "n{}", a.name.id);
            }
            ArrLen::Fixed(n) => {
                let _ = write!(out, "{n}");
            }
        },
    }
}

/// Renders an expression as C source text.
pub fn exp_to_c(e: &Exp) -> String {
    let mut s = String::new();
    exp(e, &mut s);
    s
}

struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn block(&mut self, s: &Stm) {
        self.indent += 1;
        self.stm(s);
        self.indent -= 1;
    }

    fn stm(&mut self, s: &Stm) {
        match s {
            Stm::Unit => {}
            Stm::Seq(items) => {
                for it in items {
                    self.stm(it);
                }
            }
            Stm::Let { name, init, body } => {
                let t = c_type(init.ty(), false);
                self.line(&format!("{t} const {name} = {};", exp_to_c(init)));
                self.stm(body);
            }
            Stm::NewRef { var, init, body } => {
                let t = c_type(var.ty, var.wide);
                self.line(&format!("{t} {} = {};", var.name, exp_to_c(init)));
                self.stm(body);
            }
            Stm::Assign(v, e) => self.line(&format!("{} = {};", v.name, exp_to_c(e))),
            Stm::Incr(v) => self.line(&format!("{}++;", v.name)),
            Stm::Decr(v) => self.line(&format!("{}--;", v.name)),
            Stm::If(c, t, e) => {
                self.line(&format!("if ({}) {{", exp_to_c(c)));
                self.block(t);
                self.line("} else {");
                self.block(e);
                self.line("}");
            }
            Stm::If1(c, t) => {
                self.line(&format!("if ({}) {{", exp_to_c(c)));
                self.block(t);
                self.line("}");
            }
            Stm::While(c, body) => {
                self.line(&format!("while ({}) {{", exp_to_c(c)));
                self.block(body);
                self.line("}");
            }
            Stm::ArraySet(a, i, e) => {
                self.line(&format!("{}[{}] = {};", a.name, exp_to_c(i), exp_to_c(e)))
            }
            Stm::NewArray { var, init, body } => {
                let elems: Vec<String> = init.iter().map(exp_to_c).collect();
                let t = c_type(var.elem, false);
                if elems.is_empty() {
                    self.line(&format!("{t} {}[1] = {{0}};", var.name));
                } else {
                    self.line(&format!("{t} {}[] = {{{}}};", var.name, elems.join(", ")));
                }
                self.stm(body);
            }
            // Hoisted to the top of the function; see `emit_function`.
            Stm::NewStaticArray { body, .. } => self.stm(body),
            Stm::NewUArray { var, len, body } => {
                let t = c_type(var.elem, false);
                self.line(&format!("{t} {}[{}];", var.name, (*len).max(1)));
                self.stm(body);
            }
            Stm::Print(e) => {
                let text = match e.ty() {
                    TypeRep::Float => format!("printf(\"%.17g\\n\", {});", exp_to_c(e)),
                    TypeRep::Bool => format!("printf(\"%d\\n\", (int) ({}));", exp_to_c(e)),
                    _ => format!("printf(\"%lld\\n\", (long long) ({}));", exp_to_c(e)),
                };
                self.line(&text)
            }
            Stm::Return(e) => self.line(&format!("return {};", exp_to_c(e))),
        }
    }
}

fn collect_static(s: &Stm, acc: &mut Vec<(ArrVar, Vec<Lit>)>) {
    match s {
        Stm::Seq(items) => items.iter().for_each(|i| collect_static(i, acc)),
        Stm::Let { body, .. }
        | Stm::NewRef { body, .. }
        | Stm::NewArray { body, .. }
        | Stm::NewUArray { body, .. }
        | Stm::While(_, body)
        | Stm::If1(_, body) => collect_static(body, acc),
        Stm::If(_, t, e) => {
            collect_static(t, acc);
            collect_static(e, acc);
        }
        Stm::NewStaticArray { var, data, body } => {
            acc.push((*var, data.clone()));
            collect_static(body, acc);
        }
        _ => {}
    }
}

fn find_return(s: &Stm) -> Option<&Exp> {
    match s {
        Stm::Return(e) => Some(e),
        Stm::Seq(items) => items.iter().find_map(find_return),
        Stm::Let { body, .. }
        | Stm::NewRef { body, .. }
        | Stm::NewArray { body, .. }
        | Stm::NewStaticArray { body, .. }
        | Stm::NewUArray { body, .. }
        | Stm::While(_, body)
        | Stm::If1(_, body) => find_return(body),
        Stm::If(_, t, e) => find_return(t).or_else(|| find_return(e)),
        _ => None,
    }
}

fn mentions_wide(e: &Exp) -> bool {
    match e.node() {
        ExpNode::Deref(v) => v.wide,
        ExpNode::Unary(_, a) => mentions_wide(a),
        ExpNode::Binary(_, a, b) => mentions_wide(a) || mentions_wide(b),
        ExpNode::Cond(c, t, f) => mentions_wide(c) || mentions_wide(t) || mentions_wide(f),
        ExpNode::ArrayGet(_, i) => mentions_wide(i),
        _ => false,
    }
}

/// The C return type of a function body: the type of its `return`
/// statement, `int64_t` when the returned value reads a wide cell, `void`
/// when it returns nothing.
pub fn return_type(body: &Stm) -> &'static str {
    match find_return(body) {
        None => "void",
        Some(e) => c_type(e.ty(), mentions_wide(e)),
    }
}

/// Renders one C function (no includes, no header comment).
pub fn emit_function(f: &Function) -> String {
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| match p {
            Param::Array(a) => format!(
                "const {} * {}, int n{}",
                c_type(a.elem, false),
                a.name,
                a.name.id
            ),
        })
        .collect();
    let mut p = Printer {
        out: String::new(),
        indent: 0,
    };
    p.line(&format!(
        "{} {}({}) {{",
        return_type(&f.body),
        f.name,
        params.join(", ")
    ));
    p.indent = 1;
    let mut statics = Vec::new();
    collect_static(&f.body, &mut statics);
    for (var, data) in statics {
        let t = c_type(var.elem, false);
        if data.is_empty() {
            p.line(&format!("static const {t} {}[1] = {{0}};", var.name));
        } else {
            let elems: Vec<String> = data.iter().map(c_lit).collect();
            p.line(&format!("static const {t} {}[] = {{{}}};", var.name, elems.join(", ")));
        }
    }
    p.stm(&f.body);
    p.indent = 0;
    p.line("}");
    p.out
}

/// Renders a self-contained C translation unit: a header comment naming the
/// pipeline and session seed, the standard includes, and the function.
pub fn emit_c(f: &Function, pipeline: &str, seed: u32) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "/* pipec: pipeline {pipeline}, seed {seed} */");
    s.push_str("#include <stdint.h>\n#include <stdio.h>\n#include <stdbool.h>\n\n");
    s.push_str(&emit_function(f));
    s
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::super::GenSession;
    use super::*;

    #[test]
    fn empty_body_returning_zero() {
        let f = Function::new("fn", vec![], ret(int(0)));
        assert_eq!(emit_function(&f), "int fn() {\n  return 0;\n}\n");
    }

    #[test]
    fn nested_operands_are_parenthesised() {
        let x = GenSession::new(0).run(|| letl(int(5), |t| ret(((t.clone() % 17).gt_(7)).and(bool_(true)))));
        let f = Function::new("fn", vec![], x);
        assert!(emit_function(&f).contains("return (t_1 % 17) > 7;"));
    }

    #[test]
    fn if_else_and_cond_layout() {
        let body = GenSession::new(0).run(|| {
            newref(int(1), |v| {
                seq(vec![
                    if_(dref(&v).gt_(0), incr(&v), decr(&v)),
                    ret(cond(dref(&v).lt_(3), int(-1), dref(&v))),
                ])
            })
        });
        let text = emit_function(&Function::new("g", vec![], body));
        assert_eq!(
            text,
            "int g() {\n  int v_1 = 1;\n  if (v_1 > 0) {\n    v_1++;\n  } else {\n    v_1--;\n  }\n  return (v_1 < 3 ? (-1) : v_1);\n}\n"
        );
    }

    #[test]
    fn params_and_lengths() {
        let a = ArrVar::param(1, TypeRep::Int);
        let body = ret(array_len(&a));
        let text = emit_function(&Function::new("h", vec![Param::Array(a)], body));
        assert_eq!(text, "int h(const int * a1, int n1) {\n  return n1;\n}\n");
    }

    #[test]
    fn wide_accumulator_widens_return_type() {
        let body = GenSession::new(0).run(|| newref_wide(int(0), |v| ret(dref(&v))));
        let text = emit_function(&Function::new("s", vec![], body));
        assert!(text.starts_with("int64_t s() {\n  int64_t v_1 = 0;"));
    }

    #[test]
    fn static_arrays_are_hoisted() {
        let body = GenSession::new(0).run(|| {
            newref(int(0), |v| {
                new_static_array(TypeRep::Int, vec![Lit::Int(0), Lit::Int(1)], |a| {
                    ret(dref(&v) + array_get_(&a, int(1)))
                })
            })
        });
        let text = emit_function(&Function::new("s", vec![], body));
        assert_eq!(
            text,
            "int s() {\n  static const int t_2[] = {0, 1};\n  int v_1 = 0;\n  return v_1 + t_2[1];\n}\n"
        );
    }

    #[test]
    fn file_has_header_and_includes() {
        let f = Function::new("fn", vec![], ret(int(0)));
        let text = emit_c(&f, "zero", 7);
        assert!(text.starts_with("/* pipec: pipeline zero, seed 7 */\n#include <stdint.h>\n#include <stdio.h>\n#include <stdbool.h>\n"));
    }
}
