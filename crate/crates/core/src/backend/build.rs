//! Typed builders for the target language.
//!
//! Expression builders are pure constructors. Statement builders that
//! introduce binders ([`letl`], [`newref`], the array allocators) draw fresh
//! names from the active [`super::GenSession`] and pass the bound handle to
//! a continuation, so a bound name can be spliced any number of times while
//! the bound expression appears exactly once.
//!
//! The only simplification performed anywhere is literal absorption in
//! [`and`]/[`or`] (`true && g` is `g`); everything else is left to the C
//! compiler.

use std::ops;

use super::ir::*;
use super::session::fresh_id;

fn fresh(kind: NameKind) -> Name {
    Name {
        kind,
        id: fresh_id(),
    }
}

fn mismatch(op: &str, a: TypeRep, b: TypeRep) -> ! {
    panic!("type mismatch in `{op}`: {a} vs {b}")
}

/// Integer literal.
pub fn int(v: i64) -> Exp {
    Exp::from_parts(TypeRep::Int, ExpNode::Lit(Lit::Int(v)))
}

/// Boolean literal.
pub fn bool_(v: bool) -> Exp {
    Exp::from_parts(TypeRep::Bool, ExpNode::Lit(Lit::Bool(v)))
}

/// Float literal.
pub fn float(v: f64) -> Exp {
    Exp::from_parts(TypeRep::Float, ExpNode::Lit(Lit::Float(v)))
}

/// The unit value.
pub fn unit() -> Exp {
    Exp::from_parts(TypeRep::Unit, ExpNode::Lit(Lit::Unit))
}

/// A literal of any type.
pub fn lit(l: Lit) -> Exp {
    Exp::from_parts(l.ty(), ExpNode::Lit(l))
}

/// The default value of a type (used to pre-allocate cells).
pub fn default_of(ty: TypeRep) -> Exp {
    match ty {
        TypeRep::Bool => bool_(false),
        TypeRep::Int => int(0),
        TypeRep::Float => float(0.0),
        TypeRep::Unit => unit(),
    }
}

impl From<i64> for Exp {
    fn from(v: i64) -> Exp {
        int(v)
    }
}

impl From<bool> for Exp {
    fn from(v: bool) -> Exp {
        bool_(v)
    }
}

impl From<f64> for Exp {
    fn from(v: f64) -> Exp {
        float(v)
    }
}

impl From<&Exp> for Exp {
    fn from(v: &Exp) -> Exp {
        v.clone()
    }
}

/// A binary operation with type checking.
pub fn binary(op: BinOp, a: Exp, b: Exp) -> Exp {
    use BinOp::*;
    let (ta, tb) = (a.ty(), b.ty());
    let ty = match op {
        Add | Sub | Mul | Div => match (ta, tb) {
            (TypeRep::Int, TypeRep::Int) => TypeRep::Int,
            (TypeRep::Float, TypeRep::Float) => TypeRep::Float,
            _ => mismatch(op.symbol(), ta, tb),
        },
        Mod | LogAnd => match (ta, tb) {
            (TypeRep::Int, TypeRep::Int) => TypeRep::Int,
            _ => mismatch(op.symbol(), ta, tb),
        },
        Eq | Ne => {
            if ta != tb || ta == TypeRep::Unit {
                mismatch(op.symbol(), ta, tb)
            }
            TypeRep::Bool
        }
        Lt | Le | Gt | Ge => match (ta, tb) {
            (TypeRep::Int, TypeRep::Int) | (TypeRep::Float, TypeRep::Float) => TypeRep::Bool,
            _ => mismatch(op.symbol(), ta, tb),
        },
        And | Or => match (ta, tb) {
            (TypeRep::Bool, TypeRep::Bool) => TypeRep::Bool,
            _ => mismatch(op.symbol(), ta, tb),
        },
    };
    Exp::from_parts(ty, ExpNode::Binary(op, a, b))
}

/// Short-circuit conjunction; boolean literals are absorbed.
pub fn and(a: Exp, b: Exp) -> Exp {
    if a.ty() != TypeRep::Bool || b.ty() != TypeRep::Bool {
        mismatch("&&", a.ty(), b.ty())
    }
    if a.is_bool_lit(true) {
        b
    } else if b.is_bool_lit(true) || a.is_bool_lit(false) {
        a
    } else {
        binary(BinOp::And, a, b)
    }
}

/// Short-circuit disjunction; boolean literals are absorbed.
pub fn or(a: Exp, b: Exp) -> Exp {
    if a.ty() != TypeRep::Bool || b.ty() != TypeRep::Bool {
        mismatch("||", a.ty(), b.ty())
    }
    if a.is_bool_lit(false) {
        b
    } else if b.is_bool_lit(false) || a.is_bool_lit(true) {
        a
    } else {
        binary(BinOp::Or, a, b)
    }
}

/// Boolean negation.
pub fn not(a: Exp) -> Exp {
    if a.ty() != TypeRep::Bool {
        panic!("type mismatch in `!`: {} is not bool", a.ty())
    }
    Exp::from_parts(TypeRep::Bool, ExpNode::Unary(UnOp::Not, a))
}

/// Conversion of an integer to a float.
pub fn float_of_int(a: Exp) -> Exp {
    if a.ty() != TypeRep::Int {
        panic!("type mismatch in float_of_int: {}", a.ty())
    }
    Exp::from_parts(TypeRep::Float, ExpNode::Unary(UnOp::FloatOfInt, a))
}

/// Truncation of a float to an integer.
pub fn truncate(a: Exp) -> Exp {
    if a.ty() != TypeRep::Float {
        panic!("type mismatch in truncate: {}", a.ty())
    }
    Exp::from_parts(TypeRep::Int, ExpNode::Unary(UnOp::TruncToInt, a))
}

/// Conditional expression `c ? t : e`.
pub fn cond(c: Exp, t: Exp, e: Exp) -> Exp {
    if c.ty() != TypeRep::Bool {
        panic!("type mismatch in cond: condition is {}", c.ty())
    }
    if t.ty() != e.ty() {
        mismatch("cond", t.ty(), e.ty())
    }
    Exp::from_parts(t.ty(), ExpNode::Cond(c, t, e))
}

/// `1` if `b` holds, `0` otherwise.
pub fn int_of_bool(b: Exp) -> Exp {
    cond(b, int(1), int(0))
}

/// Integer minimum as a conditional expression.
pub fn imin(a: Exp, b: Exp) -> Exp {
    cond(a.lt_(b.clone()), a, b)
}

/// Integer maximum as a conditional expression.
pub fn imax(a: Exp, b: Exp) -> Exp {
    cond(a.lt_(b.clone()), b, a)
}

macro_rules! arith_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl<T: Into<Exp>> ops::$tr<T> for Exp {
            type Output = Exp;
            fn $method(self, rhs: T) -> Exp {
                binary($op, self, rhs.into())
            }
        }
        impl<T: Into<Exp>> ops::$tr<T> for &Exp {
            type Output = Exp;
            fn $method(self, rhs: T) -> Exp {
                binary($op, self.clone(), rhs.into())
            }
        }
    };
}

arith_op!(Add, add, BinOp::Add);
arith_op!(Sub, sub, BinOp::Sub);
arith_op!(Mul, mul, BinOp::Mul);
arith_op!(Div, div, BinOp::Div);
arith_op!(Rem, rem, BinOp::Mod);
arith_op!(BitAnd, bitand, BinOp::LogAnd);

impl ops::Neg for Exp {
    type Output = Exp;
    fn neg(self) -> Exp {
        match self.ty() {
            TypeRep::Int | TypeRep::Float => {
                Exp::from_parts(self.ty(), ExpNode::Unary(UnOp::Neg, self))
            }
            t => panic!("type mismatch in unary `-`: {t}"),
        }
    }
}

impl ops::Not for Exp {
    type Output = Exp;
    fn not(self) -> Exp {
        not(self)
    }
}

impl Exp {
    pub fn eq_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Eq, self.clone(), rhs.into())
    }
    pub fn ne_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Ne, self.clone(), rhs.into())
    }
    pub fn lt_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Lt, self.clone(), rhs.into())
    }
    pub fn le_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Le, self.clone(), rhs.into())
    }
    pub fn gt_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Gt, self.clone(), rhs.into())
    }
    pub fn ge_(&self, rhs: impl Into<Exp>) -> Exp {
        binary(BinOp::Ge, self.clone(), rhs.into())
    }
    pub fn and(&self, rhs: impl Into<Exp>) -> Exp {
        and(self.clone(), rhs.into())
    }
    pub fn or(&self, rhs: impl Into<Exp>) -> Exp {
        or(self.clone(), rhs.into())
    }
}

// ---------------------------------------------------------------- statements

/// The statement that does nothing.
pub fn skip() -> Stm {
    Stm::Unit
}

/// Sequential composition of several statements.
pub fn seq(items: Vec<Stm>) -> Stm {
    let mut out = Vec::with_capacity(items.len());
    for s in items {
        match s {
            Stm::Unit => {}
            Stm::Seq(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Stm::Unit,
        1 => out.pop().unwrap(),
        _ => Stm::Seq(out),
    }
}

fn expect_bool(what: &str, c: &Exp) {
    if c.ty() != TypeRep::Bool {
        panic!("type mismatch in {what}: condition is {}", c.ty())
    }
}

/// Two-armed conditional statement.
pub fn if_(c: Exp, then: Stm, els: Stm) -> Stm {
    expect_bool("if_", &c);
    Stm::If(c, Box::new(then), Box::new(els))
}

/// One-armed conditional statement.
pub fn if1(c: Exp, then: Stm) -> Stm {
    expect_bool("if1", &c);
    Stm::If1(c, Box::new(then))
}

/// A `while` loop.
pub fn while_(c: Exp, body: Stm) -> Stm {
    expect_bool("while_", &c);
    Stm::While(c, Box::new(body))
}

/// Binds `e` to a fresh immutable name and passes the name to `k`.
pub fn letl(e: Exp, k: impl FnOnce(Exp) -> Stm) -> Stm {
    let name = fresh(NameKind::Let);
    let ty = e.ty();
    let body = k(Exp::from_parts(ty, ExpNode::Local(name)));
    Stm::Let {
        name,
        init: e,
        body: Box::new(body),
    }
}

fn newref_kind(init: Exp, kind: NameKind, wide: bool, k: impl FnOnce(MutVar) -> Stm) -> Stm {
    let var = MutVar {
        name: fresh(kind),
        ty: init.ty(),
        wide,
    };
    let body = k(var);
    Stm::NewRef {
        var,
        init,
        body: Box::new(body),
    }
}

/// Allocates a fresh mutable cell initialised to `init`.
pub fn newref(init: Exp, k: impl FnOnce(MutVar) -> Stm) -> Stm {
    newref_kind(init, NameKind::Mut, false, k)
}

/// Like [`newref`], but the cell is a wide (`int64_t`) accumulator in C.
pub fn newref_wide(init: Exp, k: impl FnOnce(MutVar) -> Stm) -> Stm {
    newref_kind(init, NameKind::Mut, true, k)
}

/// Allocates a loop-index cell (printed with the `i_` prefix).
pub fn new_index(init: Exp, k: impl FnOnce(MutVar) -> Stm) -> Stm {
    newref_kind(init, NameKind::Index, false, k)
}

/// Reads a mutable cell.
pub fn dref(v: &MutVar) -> Exp {
    Exp::from_parts(v.ty, ExpNode::Deref(*v))
}

/// Writes a mutable cell.
pub fn assign(v: &MutVar, e: Exp) -> Stm {
    if v.ty != e.ty() {
        mismatch(":=", v.ty, e.ty())
    }
    Stm::Assign(*v, e)
}

fn expect_int_cell(what: &str, v: &MutVar) {
    if v.ty != TypeRep::Int {
        panic!("type mismatch in {what}: cell is {}", v.ty)
    }
}

/// Increments an integer cell.
pub fn incr(v: &MutVar) -> Stm {
    expect_int_cell("incr", v);
    Stm::Incr(*v)
}

/// Decrements an integer cell.
pub fn decr(v: &MutVar) -> Stm {
    expect_int_cell("decr", v);
    Stm::Decr(*v)
}

/// Array read as an expression.
pub fn array_get_(a: &ArrVar, i: Exp) -> Exp {
    if i.ty() != TypeRep::Int {
        panic!("type mismatch in array index: {}", i.ty())
    }
    Exp::from_parts(a.elem, ExpNode::ArrayGet(*a, i))
}

/// Array read let-bound to a fresh name.
pub fn array_get(a: &ArrVar, i: Exp, k: impl FnOnce(Exp) -> Stm) -> Stm {
    letl(array_get_(a, i), k)
}

/// Array length.
pub fn array_len(a: &ArrVar) -> Exp {
    Exp::from_parts(TypeRep::Int, ExpNode::ArrayLen(*a))
}

/// Array write.
pub fn array_set(a: &ArrVar, i: Exp, e: Exp) -> Stm {
    if i.ty() != TypeRep::Int {
        panic!("type mismatch in array index: {}", i.ty())
    }
    if e.ty() != a.elem {
        mismatch("array_set", a.elem, e.ty())
    }
    Stm::ArraySet(*a, i, e)
}

/// A mutable array initialised from expressions.
pub fn new_array(elem: TypeRep, init: Vec<Exp>, k: impl FnOnce(ArrVar) -> Stm) -> Stm {
    for e in &init {
        if e.ty() != elem {
            mismatch("new_array", elem, e.ty())
        }
    }
    let var = ArrVar {
        name: fresh(NameKind::Mut),
        elem,
        len: ArrLen::Fixed(init.len()),
    };
    let body = k(var);
    Stm::NewArray {
        var,
        init,
        body: Box::new(body),
    }
}

/// A constant array allocated in the data segment.
pub fn new_static_array(elem: TypeRep, data: Vec<Lit>, k: impl FnOnce(ArrVar) -> Stm) -> Stm {
    for l in &data {
        if l.ty() != elem {
            mismatch("new_static_array", elem, l.ty())
        }
    }
    let var = ArrVar {
        name: fresh(NameKind::Let),
        elem,
        len: ArrLen::Fixed(data.len()),
    };
    let body = k(var);
    Stm::NewStaticArray {
        var,
        data,
        body: Box::new(body),
    }
}

/// An uninitialised array of `len` elements.
pub fn new_uarray(elem: TypeRep, len: usize, k: impl FnOnce(ArrVar) -> Stm) -> Stm {
    let var = ArrVar {
        name: fresh(NameKind::Mut),
        elem,
        len: ArrLen::Fixed(len),
    };
    let body = k(var);
    Stm::NewUArray {
        var,
        len,
        body: Box::new(body),
    }
}

/// Prints a value on its own line.
pub fn print(e: Exp) -> Stm {
    if e.ty() == TypeRep::Unit {
        panic!("cannot print a unit value")
    }
    Stm::Print(e)
}

/// Returns a value from the generated function.
pub fn ret(e: Exp) -> Stm {
    Stm::Return(e)
}
