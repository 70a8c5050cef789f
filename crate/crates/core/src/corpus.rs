//! Random pipelines, with two interpretations each: generated code and the
//! reference semantics.
//!
//! A [`PipeDesc`] is a source followed by a list of operations. The
//! generator keeps every pipeline terminating and productive: filtering
//! operations are only applied to finite streams, a flat-map over an
//! infinite stream always has a non-empty inner stream, and an infinite
//! pipeline is cut with `take` at the end. Arithmetic wraps in both
//! interpretations, so results agree exactly even on overflow.

use std::fmt;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::backend::{
    emit_c, imax, int, print, seq, ArrVar, Exp, Function, GenSession, Interpreter, Param, TypeRep,
    Value,
};
use crate::oracle::{o_zip, run_items, sugar as o, OStream, Val};
use crate::stream::{
    audit_normal_forms, check_normal_form, iter, linearize, zip_raw, CStream, Shape, Stream,
};
use crate::sugar::{from_to, iota, of_arr, of_int_array, zip_with};

/// Number of array parameters of every corpus function.
pub const ARRAYS: usize = 2;

/// A unary item transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MapFn {
    Add(i64),
    Sub(i64),
    Mul(i64),
    Mod(i64),
    Square,
}

/// An item predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PredFn {
    ModEq(i64, i64),
    Lt(i64),
    Gt(i64),
    Ne(i64),
}

/// A binary item combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BinFn {
    Add,
    Sub,
    Mul,
    Max,
}

/// Where a pipeline's items come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// One of the array parameters.
    Array(usize),
    /// A constant array.
    Static(Vec<i64>),
    /// `n, n+1, ...` (infinite).
    Iota(i64),
    /// `a ..= b`.
    FromTo(i64, i64),
}

/// The source of an inner stream, a function of the outer item `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InnerSource {
    /// `from_to x (x + k)`: never empty.
    Span(i64),
    /// `from_to 1 (x mod m)`: possibly empty.
    UpTo(i64),
    /// `iota x |> take k`.
    IotaTake(i64),
    /// `of_arr a |> map (fun y -> x * y)`.
    ArrayScaled(usize),
}

/// The stream a flat-map produces for each item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inner {
    pub source: InnerSource,
    pub ops: Vec<Op>,
}

/// One pipeline stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Op {
    Map(MapFn),
    Filter(PredFn),
    Take(i64),
    TakeWhile(PredFn),
    Drop(i64),
    DropWhile(PredFn),
    Scan(BinFn),
    Diff,
    FlatMap(Box<Inner>),
    ZipWith(BinFn, Box<PipeDesc>),
}

/// A pipeline: a source and its stages, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipeDesc {
    pub source: Source,
    pub ops: Vec<Op>,
}

impl MapFn {
    fn code(&self, x: Exp) -> Exp {
        match *self {
            MapFn::Add(k) => x + k,
            MapFn::Sub(k) => x - k,
            MapFn::Mul(k) => x * k,
            MapFn::Mod(m) => x % m,
            MapFn::Square => x.clone() * x,
        }
    }

    fn eval(&self, x: i64) -> i64 {
        match *self {
            MapFn::Add(k) => x.wrapping_add(k),
            MapFn::Sub(k) => x.wrapping_sub(k),
            MapFn::Mul(k) => x.wrapping_mul(k),
            MapFn::Mod(m) => x.wrapping_rem(m),
            MapFn::Square => x.wrapping_mul(x),
        }
    }
}

impl PredFn {
    fn code(&self, x: &Exp) -> Exp {
        match *self {
            PredFn::ModEq(m, r) => (x.clone() % m).eq_(r),
            PredFn::Lt(k) => x.lt_(k),
            PredFn::Gt(k) => x.gt_(k),
            PredFn::Ne(k) => x.ne_(k),
        }
    }

    fn eval(&self, x: i64) -> bool {
        match *self {
            PredFn::ModEq(m, r) => x.wrapping_rem(m) == r,
            PredFn::Lt(k) => x < k,
            PredFn::Gt(k) => x > k,
            PredFn::Ne(k) => x != k,
        }
    }
}

impl BinFn {
    fn code(self, a: Exp, b: Exp) -> Exp {
        match self {
            BinFn::Add => a + b,
            BinFn::Sub => a - b,
            BinFn::Mul => a * b,
            BinFn::Max => imax(a, b),
        }
    }

    fn eval(self, a: i64, b: i64) -> i64 {
        match self {
            BinFn::Add => a.wrapping_add(b),
            BinFn::Sub => a.wrapping_sub(b),
            BinFn::Mul => a.wrapping_mul(b),
            BinFn::Max => a.max(b),
        }
    }
}

fn ints(v: &Val) -> i64 {
    v.int()
}

fn o_map(f: impl Fn(i64) -> i64 + 'static, s: OStream) -> OStream {
    o::map(move |v| Val::Int(f(ints(v))), s)
}

fn o_zip_with(f: BinFn, a: OStream, b: OStream) -> OStream {
    o::zip_with(move |x, y| Val::Int(f.eval(ints(x), ints(y))), a, b)
}

impl Op {
    fn code(&self, s: CStream, arrays: &Rc<Vec<ArrVar>>) -> CStream {
        match self {
            Op::Map(f) => {
                let f = f.clone();
                s.map(move |x| f.code(x))
            }
            Op::Filter(p) => {
                let p = p.clone();
                s.filter(move |x| p.code(x))
            }
            Op::Take(n) => s.take(int(*n)),
            Op::TakeWhile(p) => {
                let p = p.clone();
                s.take_while(move |x| p.code(x))
            }
            Op::Drop(n) => s.drop(int(*n)),
            Op::DropWhile(p) => {
                let p = p.clone();
                s.drop_while(move |x| p.code(x))
            }
            Op::Scan(f) => {
                let f = *f;
                s.scan(move |a, x| f.code(a, x), int(0))
            }
            Op::Diff => s.diff(),
            Op::FlatMap(inner) => {
                let (inner, arrays) = (inner.clone(), arrays.clone());
                s.flat_map(move |x| inner.code(x, &arrays))
            }
            Op::ZipWith(f, other) => {
                let f = *f;
                zip_with(move |a, b| f.code(a, b), s, other.code_stream(arrays))
            }
        }
    }

    fn oracle(&self, s: OStream, inputs: &Rc<Vec<Vec<i64>>>) -> OStream {
        match self {
            Op::Map(f) => {
                let f = f.clone();
                o_map(move |x| f.eval(x), s)
            }
            Op::Filter(p) => {
                let p = p.clone();
                o::filter(move |x| p.eval(ints(x)), s)
            }
            Op::Take(n) => o::take(*n, s),
            Op::TakeWhile(p) => {
                let p = p.clone();
                o::take_while(move |x| p.eval(ints(x)), s)
            }
            Op::Drop(n) => o::drop(*n, s),
            Op::DropWhile(p) => {
                let p = p.clone();
                o::drop_while(move |x| p.eval(ints(x)), s)
            }
            Op::Scan(f) => {
                let f = *f;
                o::scan(move |a, x| Val::Int(f.eval(ints(a), ints(x))), Val::Int(0), s)
            }
            Op::Diff => o::diff(s),
            Op::FlatMap(inner) => {
                let (inner, inputs) = (inner.clone(), inputs.clone());
                o::flat_map(move |x| inner.oracle(ints(x), &inputs), s)
            }
            Op::ZipWith(f, other) => o_zip_with(*f, s, other.oracle_stream(inputs)),
        }
    }
}

impl Inner {
    fn code(&self, x: Exp, arrays: &Rc<Vec<ArrVar>>) -> CStream {
        let s = match self.source {
            InnerSource::Span(k) => from_to(x.clone(), x + k),
            InnerSource::UpTo(m) => from_to(int(1), x % m),
            InnerSource::IotaTake(k) => iota(x).take(int(k)),
            InnerSource::ArrayScaled(a) => of_arr(arrays[a]).map(move |y| x.clone() * y),
        };
        self.ops.iter().fold(s, |s, op| op.code(s, arrays))
    }

    fn oracle(&self, x: i64, inputs: &Rc<Vec<Vec<i64>>>) -> OStream {
        let s = match self.source {
            InnerSource::Span(k) => o::from_to(x, x.wrapping_add(k)),
            InnerSource::UpTo(m) => o::from_to(1, x.wrapping_rem(m)),
            InnerSource::IotaTake(k) => o::take(k, o::iota(x)),
            InnerSource::ArrayScaled(a) => o_map(move |y| x.wrapping_mul(y), o::of_ints(&inputs[a])),
        };
        self.ops.iter().fold(s, |s, op| op.oracle(s, inputs))
    }
}

impl PipeDesc {
    /// The pipeline as a code-generating stream over the array parameters.
    pub fn code_stream(&self, arrays: &Rc<Vec<ArrVar>>) -> CStream {
        let s = match &self.source {
            Source::Array(k) => of_arr(arrays[*k]),
            Source::Static(data) => of_int_array(data),
            Source::Iota(n) => iota(int(*n)),
            Source::FromTo(a, b) => from_to(int(*a), int(*b)),
        };
        self.ops.iter().fold(s, |s, op| op.code(s, arrays))
    }

    /// The pipeline in the reference semantics, over concrete inputs.
    pub fn oracle_stream(&self, inputs: &Rc<Vec<Vec<i64>>>) -> OStream {
        let s = match &self.source {
            Source::Array(k) => o::of_ints(&inputs[*k]),
            Source::Static(data) => o::of_ints(data),
            Source::Iota(n) => o::iota(*n),
            Source::FromTo(a, b) => o::from_to(*a, *b),
        };
        self.ops.iter().fold(s, |s, op| op.oracle(s, inputs))
    }

    /// A function printing every item of the pipeline, with names numbered
    /// from `seed`.
    pub fn function(&self, seed: u32) -> Function {
        self.function_with(seed, |s| s.print_all())
    }

    fn function_with(&self, seed: u32, body: impl FnOnce(CStream) -> crate::Stm) -> Function {
        let arrays = Rc::new(array_params());
        let stm = GenSession::new(seed).run(|| body(self.code_stream(&arrays)));
        Function::new(
            "fn",
            arrays.iter().cloned().map(Param::Array).collect(),
            stm,
        )
    }

    /// The function for [`Self::zip_linearized_with_counter`]: the
    /// linearized pipeline zipped with `iota 0`, printing both components.
    pub fn zip_linearized_function(&self, seed: u32) -> Function {
        let arrays = Rc::new(array_params());
        let stm = GenSession::new(seed).run(|| {
            let lin = linearize(self.code_stream(&arrays));
            iter(|(x, i)| seq(vec![print(x), print(i)]), zip_raw(lin, iota(int(0))))
        });
        Function::new(
            "fn",
            arrays.iter().cloned().map(Param::Array).collect(),
            stm,
        )
    }

    /// The normal-form shape of the pipeline's stream, and of its
    /// linearization.
    pub fn shapes(&self) -> (Shape, Shape) {
        let arrays = Rc::new(array_params());
        GenSession::new(0).run(|| {
            let s = self.code_stream(&arrays);
            let lin: Stream<Exp> = linearize(s.clone());
            (
                check_normal_form(&s).expect("pipelines are in normal form"),
                check_normal_form(&lin).expect("linearized pipelines are in normal form"),
            )
        })
    }
}

impl fmt::Display for PipeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.source)?;
        for op in &self.ops {
            write!(f, " |> {op:?}")?;
        }
        Ok(())
    }
}

fn array_params() -> Vec<ArrVar> {
    (1..=ARRAYS as u32).map(|k| ArrVar::param(k, TypeRep::Int)).collect()
}

/// The shape of the streams a generator may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Any terminating pipeline.
    Any,
    /// A finite pipeline whose normal form is nested: a finite outer stream,
    /// a flat-map, then only maps and filters.
    Nested,
}

/// A seeded generator of pipelines and inputs.
pub struct CorpusGen {
    rng: ChaCha8Rng,
}

impl CorpusGen {
    pub fn new(seed: u64) -> Self {
        CorpusGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Input arrays: short, with small values of either sign.
    pub fn inputs(&mut self) -> Vec<Vec<i64>> {
        (0..ARRAYS)
            .map(|_| {
                let n = self.rng.gen_range(0..=24);
                (0..n).map(|_| self.rng.gen_range(-20..=20)).collect()
            })
            .collect()
    }

    pub fn pipeline(&mut self, flavor: Flavor) -> PipeDesc {
        match flavor {
            Flavor::Any => self.pipe(0),
            Flavor::Nested => self.nested(),
        }
    }

    fn small(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn map_fn(&mut self) -> MapFn {
        match self.rng.gen_range(0..5) {
            0 => MapFn::Add(self.small(-5, 5)),
            1 => MapFn::Sub(self.small(-5, 5)),
            2 => MapFn::Mul(self.small(-3, 3)),
            3 => MapFn::Mod(self.small(2, 7)),
            _ => MapFn::Square,
        }
    }

    fn pred_fn(&mut self) -> PredFn {
        match self.rng.gen_range(0..4) {
            0 => {
                let m = self.small(2, 4);
                PredFn::ModEq(m, self.small(0, m - 1))
            }
            1 => PredFn::Lt(self.small(-5, 10)),
            2 => PredFn::Gt(self.small(-10, 5)),
            _ => PredFn::Ne(self.small(-3, 3)),
        }
    }

    fn bin_fn(&mut self) -> BinFn {
        match self.rng.gen_range(0..4) {
            0 => BinFn::Add,
            1 => BinFn::Sub,
            2 => BinFn::Mul,
            _ => BinFn::Max,
        }
    }

    /// A source and whether it is finite.
    fn source(&mut self) -> (Source, bool) {
        match self.rng.gen_range(0..6) {
            0 | 1 => (Source::Array(self.rng.gen_range(0..ARRAYS)), true),
            2 => {
                let n = self.rng.gen_range(0..8);
                let data = (0..n).map(|_| self.small(-9, 9)).collect();
                (Source::Static(data), true)
            }
            3 => (Source::Iota(self.small(-5, 5)), false),
            _ => {
                let a = self.small(-5, 5);
                (Source::FromTo(a, a + self.small(-1, 12)), true)
            }
        }
    }

    fn inner(&mut self, depth: usize, must_produce: bool) -> Inner {
        let source = match self.rng.gen_range(0..4) {
            0 => InnerSource::Span(self.small(0, 3)),
            1 if !must_produce => InnerSource::UpTo(self.small(2, 5)),
            2 => InnerSource::IotaTake(self.small(1, 4)),
            3 if !must_produce => InnerSource::ArrayScaled(self.rng.gen_range(0..ARRAYS)),
            _ => InnerSource::Span(self.small(0, 2)),
        };
        let n = self.rng.gen_range(0..=2);
        let ops = if must_produce {
            (0..n).map(|_| Op::Map(self.map_fn())).collect()
        } else {
            let mut finite = true;
            (0..n).map(|_| self.op(depth + 1, &mut finite)).collect()
        };
        Inner { source, ops }
    }

    /// One stage appropriate for a stream that is finite or not; updates
    /// finiteness.
    fn op(&mut self, depth: usize, finite: &mut bool) -> Op {
        loop {
            let pick = self.rng.gen_range(0..12);
            let op = match pick {
                0 | 1 => Op::Map(self.map_fn()),
                2 if *finite => Op::Filter(self.pred_fn()),
                3 => Op::Take(self.small(0, 12)),
                4 if *finite => Op::TakeWhile(self.pred_fn()),
                5 => Op::Drop(self.small(0, 4)),
                6 if *finite => Op::DropWhile(self.pred_fn()),
                7 => Op::Scan(self.bin_fn()),
                8 => Op::Diff,
                9 | 10 if depth < 2 => Op::FlatMap(Box::new(self.inner(depth, !*finite))),
                11 if depth < 2 => {
                    let other = self.pipe(depth + 1);
                    Op::ZipWith(self.bin_fn(), Box::new(other))
                }
                _ => continue,
            };
            // Sub-pipelines are always finite, so zipping with one is too.
            if matches!(op, Op::Take(_) | Op::ZipWith(..)) {
                *finite = true;
            }
            return op;
        }
    }

    fn pipe(&mut self, depth: usize) -> PipeDesc {
        let (source, mut finite) = self.source();
        let n = self.rng.gen_range(0..=if depth == 0 { 5 } else { 2 });
        let mut ops: Vec<Op> = (0..n).map(|_| self.op(depth, &mut finite)).collect();
        if !finite {
            ops.push(Op::Take(self.small(0, 20)));
        }
        PipeDesc { source, ops }
    }

    fn nested(&mut self) -> PipeDesc {
        let source = loop {
            match self.source() {
                (s, true) => break s,
                _ => continue,
            }
        };
        let mut finite = true;
        let n = self.rng.gen_range(0..=2);
        let mut ops: Vec<Op> = (0..n)
            .map(|_| self.op(1, &mut finite))
            .filter(|op| !matches!(op, Op::FlatMap(_) | Op::ZipWith(..)))
            .collect();
        ops.push(Op::FlatMap(Box::new(self.inner(1, false))));
        for _ in 0..self.rng.gen_range(0..=2) {
            ops.push(if self.rng.gen_bool(0.5) {
                Op::Map(self.map_fn())
            } else {
                Op::Filter(self.pred_fn())
            });
        }
        PipeDesc { source, ops }
    }
}

/// Interpreter budget for one corpus run.
const STEP_BUDGET: u64 = 5_000_000;
/// Reference-evaluation budget for one corpus run.
const ORACLE_STEPS: usize = 1_000_000;

/// A disagreement found by the corpus.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusFailure {
    pub index: usize,
    pub pipeline: String,
    pub inputs: Vec<Vec<i64>>,
    pub problem: String,
}

/// The outcome of running a random corpus.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub pipelines: usize,
    /// Raw-operation results checked for normal form.
    pub raw_ops_checked: usize,
    pub failures: Vec<CorpusFailure>,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.pipelines > 0
    }
}

fn printed_ints(f: &Function, inputs: &[Vec<i64>]) -> Result<Vec<i64>, String> {
    let out = Interpreter::with_budget(STEP_BUDGET)
        .run_ints(f, inputs)
        .map_err(|e| e.to_string())?;
    Ok(out
        .printed
        .iter()
        .map(|v| match v {
            Value::Float(x) => *x as i64,
            v => v.as_int().unwrap_or(i64::MIN),
        })
        .collect())
}

fn oracle_ints(s: &OStream) -> Result<Vec<i64>, String> {
    let items = run_items(s, ORACLE_STEPS).map_err(|n| format!("reference did not finish in {n} steps"))?;
    let mut out = vec![];
    for v in items {
        match v {
            Val::Pair(a, b) => {
                out.push(a.int());
                out.push(b.int());
            }
            v => out.push(v.int()),
        }
    }
    Ok(out)
}

/// Builds and checks one pipeline: normal form after every raw operation,
/// byte-identical C for a repeated seed, clean fusion audit, and printed
/// items equal to the reference. Returns the raw operations checked.
pub fn check_pipeline(desc: &PipeDesc, inputs: &[Vec<i64>], seed: u32) -> Result<usize, String> {
    let (f, nf) = audit_normal_forms(|| desc.function(seed));
    if let Some(v) = nf.violations.first() {
        return Err(format!("`{}` left normal form: {}", v.op, v.error));
    }
    let again = desc.function(seed);
    if emit_c(&f, "corpus", seed) != emit_c(&again, "corpus", seed) {
        return Err("same seed emitted different C".into());
    }
    let report = crate::backend::audit(&f);
    if !report.is_clean() {
        return Err(format!("fusion audit failed: {report:?}"));
    }
    let got = printed_ints(&f, inputs)?;
    let want = oracle_ints(&desc.oracle_stream(&Rc::new(inputs.to_vec())))?;
    if got != want {
        return Err(format!("generated {got:?}, reference {want:?}"));
    }
    Ok(nf.checked)
}

/// Checks one nested pipeline's linearization: the linearized stream
/// zipped with a counter prints what the reference zip of the pipeline with
/// `iota 0` yields.
pub fn check_linearized(desc: &PipeDesc, inputs: &[Vec<i64>]) -> Result<(), String> {
    let (shape, lin_shape) = desc.shapes();
    if !is_nested(&shape) {
        return Err(format!("expected a nested normal form, got {shape}"));
    }
    if !is_linear_flat(&lin_shape) {
        return Err(format!("linearization is not a linear flat stream: {lin_shape}"));
    }
    let f = desc.zip_linearized_function(0);
    let report = crate::backend::audit(&f);
    if !report.is_clean() {
        return Err(format!("fusion audit failed: {report:?}"));
    }
    let got = printed_ints(&f, inputs)?;
    let inputs = Rc::new(inputs.to_vec());
    let want = oracle_ints(&o_zip(desc.oracle_stream(&inputs), o::iota(0)))?;
    if got != want {
        return Err(format!("generated {got:?}, reference {want:?}"));
    }
    Ok(())
}

fn is_nested(s: &Shape) -> bool {
    match s {
        Shape::Init(s) => is_nested(s),
        Shape::Nested { .. } => true,
        Shape::Flat { .. } => false,
    }
}

fn is_linear_flat(s: &Shape) -> bool {
    match s {
        Shape::Init(s) => is_linear_flat(s),
        Shape::Flat { linear, .. } => *linear,
        Shape::Nested { .. } => false,
    }
}

/// Generates and checks `count` pipelines of the given flavor.
pub fn run_corpus(seed: u64, count: usize, flavor: Flavor) -> CorpusReport {
    let mut gen = CorpusGen::new(seed);
    let mut report = CorpusReport {
        seed,
        ..CorpusReport::default()
    };
    for index in 0..count {
        let desc = gen.pipeline(flavor);
        let inputs = gen.inputs();
        let outcome = match flavor {
            Flavor::Any => check_pipeline(&desc, &inputs, index as u32),
            Flavor::Nested => check_linearized(&desc, &inputs).map(|()| 0),
        };
        report.pipelines += 1;
        match outcome {
            Ok(n) => report.raw_ops_checked += n,
            Err(problem) => report.failures.push(CorpusFailure {
                index,
                pipeline: desc.to_string(),
                inputs,
                problem,
            }),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_seeded() {
        let a: Vec<_> = (0..5).map(|_| CorpusGen::new(3).pipeline(Flavor::Any)).collect();
        let b: Vec<_> = (0..5).map(|_| CorpusGen::new(3).pipeline(Flavor::Any)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn nested_flavor_is_nested() {
        let mut g = CorpusGen::new(1);
        for _ in 0..20 {
            let (shape, _) = g.pipeline(Flavor::Nested).shapes();
            assert!(is_nested(&shape), "{shape}");
        }
    }

    #[test]
    fn a_small_corpus_agrees() {
        let r = run_corpus(11, 40, Flavor::Any);
        assert!(r.ok(), "{:#?}", r.failures);
        assert!(r.raw_ops_checked > 40);
    }
}
