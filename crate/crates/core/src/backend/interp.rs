//! Reference interpreter for the target language.
//!
//! Big-step evaluation with 64-bit two's-complement wrap-around integer
//! arithmetic, short-circuit `&&`/`||`, bounds-checked array access and a
//! fault on reading an uninitialised array element. Printed values are
//! captured in order. A step budget turns runaway programs into an error.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::ir::*;

/// A runtime value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Unit,
}

impl Value {
    /// The integer payload; booleans read as 0/1.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            Value::Bool(b) => Some(*b as i64),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{}", *b as i32),
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => write!(f, "{v}"),
            Value::Unit => f.write_str("()"),
        }
    }
}

impl From<Lit> for Value {
    fn from(l: Lit) -> Value {
        match l {
            Lit::Bool(b) => Value::Bool(b),
            Lit::Int(v) => Value::Int(v),
            Lit::Float(v) => Value::Float(v),
            Lit::Unit => Value::Unit,
        }
    }
}

/// Runtime faults.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum InterpError {
    #[error("index {index} out of bounds for array {array} of length {len}")]
    OutOfBounds { array: String, index: i64, len: usize },
    #[error("read of uninitialised element {index} of array {array}")]
    Uninitialized { array: String, index: i64 },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("integer division by zero")]
    DivisionByZero,
    #[error("step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("function `{name}` expects {expected} array arguments, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("ill-typed operation at runtime: {0}")]
    Type(String),
}

/// Result of running a function body.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Outcome {
    /// The returned value, if the body executed a `return`.
    pub result: Option<Value>,
    /// Everything printed, in order.
    pub printed: Vec<Value>,
    /// Number of statements executed.
    pub steps: u64,
}

struct ArrayStore {
    cells: Vec<Option<Value>>,
}

enum Flow {
    Normal,
    Return(Value),
}

/// The interpreter; holds only the step budget.
#[derive(Clone, Copy, Debug)]
pub struct Interpreter {
    pub max_steps: u64,
}

impl Default for Interpreter {
    fn default() -> Self {
        Interpreter {
            max_steps: 500_000_000,
        }
    }
}

struct Machine<'a> {
    scalars: HashMap<Name, Value>,
    arrays: HashMap<Name, ArrayStore>,
    out: &'a mut Outcome,
    max_steps: u64,
}

fn int_of(v: Value, ctx: &str) -> Result<i64, InterpError> {
    match v {
        Value::Int(x) => Ok(x),
        other => Err(InterpError::Type(format!("{ctx}: expected int, got {other:?}"))),
    }
}

fn bool_of(v: Value, ctx: &str) -> Result<bool, InterpError> {
    match v {
        Value::Bool(x) => Ok(x),
        other => Err(InterpError::Type(format!("{ctx}: expected bool, got {other:?}"))),
    }
}

impl Machine<'_> {
    fn tick(&mut self) -> Result<(), InterpError> {
        self.out.steps += 1;
        if self.out.steps > self.max_steps {
            Err(InterpError::BudgetExceeded(self.max_steps))
        } else {
            Ok(())
        }
    }

    fn lookup(&self, n: &Name) -> Result<Value, InterpError> {
        self.scalars
            .get(n)
            .copied()
            .ok_or_else(|| InterpError::Unbound(n.to_string()))
    }

    fn array(&self, a: &ArrVar) -> Result<&ArrayStore, InterpError> {
        self.arrays
            .get(&a.name)
            .ok_or_else(|| InterpError::Unbound(a.name.to_string()))
    }

    fn index(&self, a: &ArrVar, i: i64) -> Result<usize, InterpError> {
        let len = self.array(a)?.cells.len();
        if i < 0 || i as usize >= len {
            Err(InterpError::OutOfBounds {
                array: a.name.to_string(),
                index: i,
                len,
            })
        } else {
            Ok(i as usize)
        }
    }

    fn eval(&self, e: &Exp) -> Result<Value, InterpError> {
        Ok(match e.node() {
            ExpNode::Lit(l) => Value::from(*l),
            ExpNode::Local(n) => self.lookup(n)?,
            ExpNode::Deref(v) => self.lookup(&v.name)?,
            ExpNode::Unary(op, a) => {
                let a = self.eval(a)?;
                match (op, a) {
                    (UnOp::Not, Value::Bool(b)) => Value::Bool(!b),
                    (UnOp::Neg, Value::Int(x)) => Value::Int(x.wrapping_neg()),
                    (UnOp::Neg, Value::Float(x)) => Value::Float(-x),
                    (UnOp::FloatOfInt, Value::Int(x)) => Value::Float(x as f64),
                    (UnOp::TruncToInt, Value::Float(x)) => Value::Int(x as i64),
                    (op, a) => return Err(InterpError::Type(format!("{op:?} on {a:?}"))),
                }
            }
            ExpNode::Binary(BinOp::And, a, b) => {
                Value::Bool(bool_of(self.eval(a)?, "&&")? && bool_of(self.eval(b)?, "&&")?)
            }
            ExpNode::Binary(BinOp::Or, a, b) => {
                Value::Bool(bool_of(self.eval(a)?, "||")? || bool_of(self.eval(b)?, "||")?)
            }
            ExpNode::Binary(op, a, b) => binop(*op, self.eval(a)?, self.eval(b)?)?,
            ExpNode::Cond(c, t, f) => {
                if bool_of(self.eval(c)?, "cond")? {
                    self.eval(t)?
                } else {
                    self.eval(f)?
                }
            }
            ExpNode::ArrayGet(a, i) => {
                let i = int_of(self.eval(i)?, "array index")?;
                let ix = self.index(a, i)?;
                self.array(a)?.cells[ix].ok_or_else(|| InterpError::Uninitialized {
                    array: a.name.to_string(),
                    index: i,
                })?
            }
            ExpNode::ArrayLen(a) => Value::Int(self.array(a)?.cells.len() as i64),
        })
    }

    fn exec(&mut self, s: &Stm) -> Result<Flow, InterpError> {
        self.tick()?;
        match s {
            Stm::Unit => {}
            Stm::Seq(items) => {
                for it in items {
                    if let Flow::Return(v) = self.exec(it)? {
                        return Ok(Flow::Return(v));
                    }
                }
            }
            Stm::Let { name, init, body } => {
                let v = self.eval(init)?;
                self.scalars.insert(*name, v);
                return self.exec(body);
            }
            Stm::NewRef { var, init, body } => {
                let v = self.eval(init)?;
                self.scalars.insert(var.name, v);
                return self.exec(body);
            }
            Stm::Assign(var, e) => {
                let v = self.eval(e)?;
                self.scalars.insert(var.name, v);
            }
            Stm::Incr(var) | Stm::Decr(var) => {
                let x = int_of(self.lookup(&var.name)?, "incr/decr")?;
                let d = if matches!(s, Stm::Incr(_)) { 1 } else { -1 };
                self.scalars.insert(var.name, Value::Int(x.wrapping_add(d)));
            }
            Stm::If(c, t, e) => {
                return if bool_of(self.eval(c)?, "if")? {
                    self.exec(t)
                } else {
                    self.exec(e)
                };
            }
            Stm::If1(c, t) => {
                if bool_of(self.eval(c)?, "if1")? {
                    return self.exec(t);
                }
            }
            Stm::While(c, body) => {
                while bool_of(self.eval(c)?, "while")? {
                    if let Flow::Return(v) = self.exec(body)? {
                        return Ok(Flow::Return(v));
                    }
                    self.tick()?;
                }
            }
            Stm::ArraySet(a, i, e) => {
                let i = int_of(self.eval(i)?, "array index")?;
                let v = self.eval(e)?;
                let ix = self.index(a, i)?;
                self.arrays.get_mut(&a.name).unwrap().cells[ix] = Some(v);
            }
            Stm::NewArray { var, init, body } => {
                let cells = init
                    .iter()
                    .map(|e| self.eval(e).map(Some))
                    .collect::<Result<Vec<_>, _>>()?;
                self.arrays.insert(var.name, ArrayStore { cells });
                return self.exec(body);
            }
            Stm::NewStaticArray { var, data, body } => {
                let cells = data.iter().map(|l| Some(Value::from(*l))).collect();
                self.arrays.insert(var.name, ArrayStore { cells });
                return self.exec(body);
            }
            Stm::NewUArray { var, len, body } => {
                self.arrays.insert(
                    var.name,
                    ArrayStore {
                        cells: vec![None; *len],
                    },
                );
                return self.exec(body);
            }
            Stm::Print(e) => {
                let v = self.eval(e)?;
                self.out.printed.push(v);
            }
            Stm::Return(e) => return Ok(Flow::Return(self.eval(e)?)),
        }
        Ok(Flow::Normal)
    }
}

fn binop(op: BinOp, a: Value, b: Value) -> Result<Value, InterpError> {
    use BinOp::*;
    Ok(match (a, b) {
        (Value::Int(x), Value::Int(y)) => match op {
            Add => Value::Int(x.wrapping_add(y)),
            Sub => Value::Int(x.wrapping_sub(y)),
            Mul => Value::Int(x.wrapping_mul(y)),
            Div | Mod if y == 0 => return Err(InterpError::DivisionByZero),
            Div => Value::Int(x.wrapping_div(y)),
            Mod => Value::Int(x.wrapping_rem(y)),
            LogAnd => Value::Int(x & y),
            Eq => Value::Bool(x == y),
            Ne => Value::Bool(x != y),
            Lt => Value::Bool(x < y),
            Le => Value::Bool(x <= y),
            Gt => Value::Bool(x > y),
            Ge => Value::Bool(x >= y),
            And | Or => return Err(InterpError::Type(format!("{op:?} on ints"))),
        },
        (Value::Float(x), Value::Float(y)) => match op {
            Add => Value::Float(x + y),
            Sub => Value::Float(x - y),
            Mul => Value::Float(x * y),
            Div => Value::Float(x / y),
            Eq => Value::Bool(x == y),
            Ne => Value::Bool(x != y),
            Lt => Value::Bool(x < y),
            Le => Value::Bool(x <= y),
            Gt => Value::Bool(x > y),
            Ge => Value::Bool(x >= y),
            _ => return Err(InterpError::Type(format!("{op:?} on floats"))),
        },
        (Value::Bool(x), Value::Bool(y)) => match op {
            Eq => Value::Bool(x == y),
            Ne => Value::Bool(x != y),
            _ => return Err(InterpError::Type(format!("{op:?} on bools"))),
        },
        (a, b) => return Err(InterpError::Type(format!("{op:?} on {a:?}, {b:?}"))),
    })
}

impl Interpreter {
    pub fn with_budget(max_steps: u64) -> Self {
        Interpreter { max_steps }
    }

    /// Runs a closed statement.
    pub fn run_stm(&self, body: &Stm) -> Result<Outcome, InterpError> {
        self.run_with(body, Vec::new())
    }

    /// Runs a function with one value vector per array parameter.
    pub fn run(&self, f: &Function, args: &[Vec<Value>]) -> Result<Outcome, InterpError> {
        let params = f.array_params();
        if params.len() != args.len() {
            return Err(InterpError::Arity {
                name: f.name.clone(),
                expected: params.len(),
                got: args.len(),
            });
        }
        let arrays = params
            .iter()
            .zip(args)
            .map(|(p, vals)| (p.name, vals.iter().map(|v| Some(*v)).collect()))
            .collect();
        self.run_with(&f.body, arrays)
    }

    /// Runs a function whose parameters are all integer arrays.
    pub fn run_ints(&self, f: &Function, args: &[Vec<i64>]) -> Result<Outcome, InterpError> {
        let args: Vec<Vec<Value>> = args
            .iter()
            .map(|a| a.iter().map(|&x| Value::Int(x)).collect())
            .collect();
        self.run(f, &args)
    }

    fn run_with(&self, body: &Stm, arrays: Vec<(Name, Vec<Option<Value>>)>) -> Result<Outcome, InterpError> {
        let mut out = Outcome::default();
        let mut m = Machine {
            scalars: HashMap::new(),
            arrays: arrays
                .into_iter()
                .map(|(n, cells)| (n, ArrayStore { cells }))
                .collect(),
            out: &mut out,
            max_steps: self.max_steps,
        };
        if let Flow::Return(v) = m.exec(body)? {
            out.result = Some(v);
        }
        Ok(out)
    }
}

/// Evaluates a closed expression.
pub fn eval_closed(e: &Exp) -> Result<Value, InterpError> {
    let mut out = Outcome::default();
    let m = Machine {
        scalars: HashMap::new(),
        arrays: HashMap::new(),
        out: &mut out,
        max_steps: u64::MAX,
    };
    m.eval(e)
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::super::GenSession;
    use super::*;

    fn run(s: Stm) -> Outcome {
        Interpreter::default().run_stm(&s).unwrap()
    }

    #[test]
    fn arithmetic_and_comparison() {
        assert_eq!(eval_closed(&(int(2) + int(3))), Ok(Value::Int(5)));
        assert_eq!(eval_closed(&(int(5) % 17).gt_(7)), Ok(Value::Bool(false)));
        assert_eq!(eval_closed(&cond(bool_(true), int(1), int(2))), Ok(Value::Int(1)));
        assert_eq!(eval_closed(&(int(i64::MAX) + 1)), Ok(Value::Int(i64::MIN)));
    }

    #[test]
    fn short_circuit_skips_faulting_operand() {
        let a = ArrVar::param(1, TypeRep::Int);
        let guarded = binary(BinOp::And, bool_(false), array_get_(&a, int(0)).eq_(0));
        assert_eq!(eval_closed(&guarded), Ok(Value::Bool(false)));
    }

    #[test]
    fn summation_loop() {
        let s = GenSession::new(0).run(|| {
            newref(int(0), |acc| {
                newref(int(1), |i| {
                    seq(vec![
                        while_(
                            dref(&i).le_(10),
                            seq(vec![assign(&acc, dref(&acc) + dref(&i)), incr(&i)]),
                        ),
                        ret(dref(&acc)),
                    ])
                })
            })
        });
        assert_eq!(run(s).result, Some(Value::Int(55)));
    }

    #[test]
    fn refs_and_prints() {
        let s = GenSession::new(0).run(|| {
            newref(int(0), |v| {
                seq(vec![
                    incr(&v),
                    incr(&v),
                    print(dref(&v)),
                    if1(bool_(false), print(int(3))),
                    assign(&v, int(9)),
                    print(dref(&v)),
                    while_(bool_(false), print(int(4))),
                ])
            })
        });
        assert_eq!(run(s).printed, vec![Value::Int(2), Value::Int(9)]);
    }

    #[test]
    fn nested_letl_binds_left_to_right() {
        let s = GenSession::new(0).run(|| {
            letl(int(1), |a| letl(a.clone() + 1, |b| seq(vec![print(a), print(b)])))
        });
        assert_eq!(run(s).printed, vec![Value::Int(1), Value::Int(2)]);
    }

    #[test]
    fn array_faults() {
        let s = GenSession::new(0).run(|| new_array(TypeRep::Int, vec![int(4), int(5), int(6)], |a| {
            seq(vec![print(array_get_(&a, int(1))), print(array_len(&a)), print(array_get_(&a, int(3)))])
        }));
        let err = Interpreter::default().run_stm(&s).unwrap_err();
        assert!(matches!(err, InterpError::OutOfBounds { index: 3, len: 3, .. }));
        let s = GenSession::new(0).run(|| new_uarray(TypeRep::Int, 2, |a| {
            seq(vec![array_set(&a, int(0), int(1)), print(array_get_(&a, int(1)))])
        }));
        let err = Interpreter::default().run_stm(&s).unwrap_err();
        assert!(matches!(err, InterpError::Uninitialized { index: 1, .. }));
    }

    #[test]
    fn budget_is_enforced() {
        let s = while_(bool_(true), skip());
        let err = Interpreter::with_budget(1000).run_stm(&s).unwrap_err();
        assert_eq!(err, InterpError::BudgetExceeded(1000));
    }

    #[test]
    fn function_arguments() {
        let (a1, a2) = (ArrVar::param(1, TypeRep::Int), ArrVar::param(2, TypeRep::Int));
        let body = ret(array_get_(&a1, int(2)) * array_get_(&a2, int(0)) + array_len(&a2));
        let f = Function::new("f", vec![Param::Array(a1), Param::Array(a2)], body);
        let out = Interpreter::default().run_ints(&f, &[vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(out.result, Some(Value::Int(14)));
        assert!(matches!(
            Interpreter::default().run_ints(&f, &[vec![]]),
            Err(InterpError::Arity { expected: 2, got: 1, .. })
        ));
    }
}
