//! The first-order target language: typed expressions, statements and
//! variable handles.
//!
//! The grammar has no abstraction, application, tuple or record node, so any
//! program built from it is completely first-order. Builders (see
//! [`super::build`]) check operand types eagerly; a mismatch is a
//! construction-time fault (panic), exactly like an ill-typed generator.

use std::fmt;
use std::rc::Rc;

/// Base types of the target language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeRep {
    Bool,
    /// 64-bit two's-complement integer in the interpreter; `int` in C unless
    /// the cell is marked wide.
    Int,
    Float,
    Unit,
}

impl fmt::Display for TypeRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeRep::Bool => "bool",
            TypeRep::Int => "int64",
            TypeRep::Float => "float64",
            TypeRep::Unit => "unit",
        })
    }
}

/// The family a generated name belongs to; decides its printed prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NameKind {
    /// Mutable cells: `v_N`.
    Mut,
    /// Immutable let-bound values and static arrays: `t_N`.
    Let,
    /// Loop index cells: `i_N`.
    Index,
    /// Function parameters: arrays `aN` with length `nN`.
    Param,
    /// Placeholder names used only while inspecting stream shapes; never
    /// reach emitted code.
    Probe,
}

/// A binder name: a family plus a session-unique number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name {
    pub kind: NameKind,
    pub id: u32,
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NameKind::Mut => write!(f, "v_{}", self.id),
            NameKind::Let => write!(f, "t_{}", self.id),
            NameKind::Index => write!(f, "i_{}", self.id),
            NameKind::Param => write!(f, "a{}", self.id),
            NameKind::Probe => write!(f, "probe_{}", self.id),
        }
    }
}

/// A mutable cell. Not an expression: reading it needs [`super::build::dref`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MutVar {
    pub name: Name,
    pub ty: TypeRep,
    /// Emitted as `int64_t` rather than `int` (summation accumulators).
    pub wide: bool,
}

/// How the length of an array is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrLen {
    /// A function parameter; the length is the companion `nK` parameter.
    Param,
    /// Allocated in the generated code with a fixed element count.
    Fixed(usize),
}

/// An array handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrVar {
    pub name: Name,
    pub elem: TypeRep,
    pub len: ArrLen,
}

impl ArrVar {
    /// The `k`-th (1-based) array parameter of a generated function.
    pub fn param(k: u32, elem: TypeRep) -> ArrVar {
        ArrVar {
            name: Name {
                kind: NameKind::Param,
                id: k,
            },
            elem,
            len: ArrLen::Param,
        }
    }

    /// Statically known element count, if any.
    pub fn static_len(&self) -> Option<usize> {
        match self.len {
            ArrLen::Param => None,
            ArrLen::Fixed(n) => Some(n),
        }
    }
}

/// Literal constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lit {
    Bool(bool),
    Int(i64),
    Float(f64),
    Unit,
}

impl Lit {
    pub fn ty(&self) -> TypeRep {
        match self {
            Lit::Bool(_) => TypeRep::Bool,
            Lit::Int(_) => TypeRep::Int,
            Lit::Float(_) => TypeRep::Float,
            Lit::Unit => TypeRep::Unit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnOp {
    Not,
    Neg,
    FloatOfInt,
    TruncToInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    LogAnd,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    /// Short-circuit conjunction.
    And,
    /// Short-circuit disjunction.
    Or,
}

impl BinOp {
    /// The C spelling of the operator.
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::LogAnd => "&",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }
}

/// Expression nodes.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpNode {
    Lit(Lit),
    /// Read of an immutable let-bound name.
    Local(Name),
    /// Read of a mutable cell.
    Deref(MutVar),
    Unary(UnOp, Exp),
    Binary(BinOp, Exp, Exp),
    Cond(Exp, Exp, Exp),
    ArrayGet(ArrVar, Exp),
    ArrayLen(ArrVar),
}

/// A typed, pure, first-order expression. Cheap to clone (shared node).
#[derive(Clone, Debug, PartialEq)]
pub struct Exp {
    ty: TypeRep,
    node: Rc<ExpNode>,
}

impl Exp {
    pub(crate) fn from_parts(ty: TypeRep, node: ExpNode) -> Exp {
        Exp {
            ty,
            node: Rc::new(node),
        }
    }

    pub fn ty(&self) -> TypeRep {
        self.ty
    }

    pub fn node(&self) -> &ExpNode {
        &self.node
    }

    /// The literal value, if this expression is a literal.
    pub fn as_lit(&self) -> Option<Lit> {
        match &*self.node {
            ExpNode::Lit(l) => Some(*l),
            _ => None,
        }
    }

    /// Whether this expression is the boolean literal `b`.
    pub fn is_bool_lit(&self, b: bool) -> bool {
        matches!(self.as_lit(), Some(Lit::Bool(x)) if x == b)
    }

    /// The cell read by this expression, if it is a bare dereference.
    pub fn as_deref(&self) -> Option<MutVar> {
        match &*self.node {
            ExpNode::Deref(v) => Some(*v),
            _ => None,
        }
    }
}

/// Statement nodes.
#[derive(Clone, Debug, PartialEq)]
pub enum Stm {
    Unit,
    Seq(Vec<Stm>),
    /// Binds `init` to a fresh immutable name scoped over `body`.
    Let {
        name: Name,
        init: Exp,
        body: Box<Stm>,
    },
    /// Allocates a mutable cell scoped over `body`.
    NewRef {
        var: MutVar,
        init: Exp,
        body: Box<Stm>,
    },
    Assign(MutVar, Exp),
    Incr(MutVar),
    Decr(MutVar),
    If(Exp, Box<Stm>, Box<Stm>),
    If1(Exp, Box<Stm>),
    While(Exp, Box<Stm>),
    ArraySet(ArrVar, Exp, Exp),
    /// A mutable array initialised from expressions.
    NewArray {
        var: ArrVar,
        init: Vec<Exp>,
        body: Box<Stm>,
    },
    /// A constant array in the data segment.
    NewStaticArray {
        var: ArrVar,
        data: Vec<Lit>,
        body: Box<Stm>,
    },
    /// An uninitialised array; reading an element before writing it is a
    /// fault in the interpreter.
    NewUArray {
        var: ArrVar,
        len: usize,
        body: Box<Stm>,
    },
    Print(Exp),
    Return(Exp),
}

impl Stm {
    /// Sequential composition (`@.`), flattening nested sequences and
    /// dropping unit statements.
    pub fn then(self, next: Stm) -> Stm {
        super::build::seq(vec![self, next])
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Stm::Unit)
    }
}

/// A function parameter of a generated C function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    /// `const T * aK, int nK`.
    Array(ArrVar),
}

/// A complete generated function: name, parameters and body.
#[derive(Clone, Debug, PartialEq)]
pub struct Function {
    pub name: String,
    pub params: Vec<Param>,
    pub body: Stm,
}

impl Function {
    pub fn new(name: impl Into<String>, params: Vec<Param>, body: Stm) -> Function {
        Function {
            name: name.into(),
            params,
            body,
        }
    }

    /// The array parameters in declaration order.
    pub fn array_params(&self) -> Vec<ArrVar> {
        self.params
            .iter()
            .map(|p| match p {
                Param::Array(a) => *a,
            })
            .collect()
    }
}
