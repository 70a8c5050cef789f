//! The registry of named pipelines: the benchmark suite and the showcase
//! programs. Each entry pairs a code builder with the reference evaluation
//! of the same pipeline in the executable semantics, and describes the
//! arrays it reads.
//!
//! All benchmarks sum with a 64-bit accumulator over `int` items; their
//! inputs are filled with `i mod 10` or `i`, and their lengths are a
//! function of a single size parameter.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::backend::{
    imax, int, int_of_bool, print, seq, ArrVar, Function, GenSession, Interpreter, Param, Stm,
    TypeRep, Value,
};
use crate::oracle::{self, run_items, OStream, Val};
use crate::stream::{iter, zip_raw};
use crate::sugar::{
    from_to, group_by_aggregate, iota, of_arr, of_int_array, parse_ints, zip_with, Monoid,
    INT32_MIN,
};

/// The symbol of every generated function.
pub const FUNCTION_NAME: &str = "fn";

/// Registry failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegistryError {
    #[error("pipeline `{0}` is registered twice")]
    Duplicate(String),
    #[error("unknown pipeline `{0}`")]
    Unknown(String),
    #[error("pipeline `{name}` expects {expected} input arrays, got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("reference evaluation of `{0}` did not finish")]
    ReferenceDiverged(String),
    #[error("interpreting `{name}` failed: {message}")]
    Run { name: String, message: String },
}

/// Whether an entry belongs to the benchmark suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Benchmark,
    Showcase,
}

/// How long an input array is, given the size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LenRule {
    /// Exactly the size.
    Size,
    /// A fixed length, independent of the size.
    Fixed(usize),
    /// The integer square root of the size (so a product of two such
    /// arrays has about `size` elements).
    Sqrt,
}

impl LenRule {
    pub fn len(self, size: usize) -> usize {
        match self {
            LenRule::Size => size,
            LenRule::Fixed(n) => n,
            LenRule::Sqrt => (size as f64).sqrt() as usize,
        }
    }
}

/// How an input array is filled: a pure function of the index and length.
#[derive(Clone, Copy)]
pub enum Fill {
    /// `i mod 10`.
    Mod10,
    /// `i`.
    Index,
    /// Any other rule, named for reports.
    Custom(&'static str, fn(usize, usize) -> i64),
}

impl Fill {
    pub fn value(self, i: usize, len: usize) -> i64 {
        match self {
            Fill::Mod10 => (i % 10) as i64,
            Fill::Index => i as i64,
            Fill::Custom(_, f) => f(i, len),
        }
    }

    /// The rule's name, as understood by the benchmark harness for the
    /// first two variants.
    pub fn name(self) -> &'static str {
        match self {
            Fill::Mod10 => "mod10",
            Fill::Index => "index",
            Fill::Custom(n, _) => n,
        }
    }
}

impl fmt::Debug for Fill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One input array of a pipeline.
#[derive(Clone, Copy, Debug)]
pub struct ArrayInput {
    pub name: &'static str,
    pub len: LenRule,
    pub fill: Fill,
}

impl ArrayInput {
    pub fn generate(&self, size: usize) -> Vec<i64> {
        let n = self.len.len(size);
        (0..n).map(|i| self.fill.value(i, n)).collect()
    }
}

/// What a pipeline's generated function makes observable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    /// The returned value: the wrapping sum of the reference items.
    Sum,
    /// The printed values: the reference items, pairs flattened, booleans
    /// as 0/1.
    Print,
}

/// An observation of a pipeline run, comparable across the generated code
/// and the reference.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Observed {
    Result(i64),
    Printed(Vec<i64>),
}

impl Observed {
    /// A short digest of the observation for reports: the result itself, or
    /// a wrapping weighted sum of the printed values.
    pub fn checksum(&self) -> i64 {
        match self {
            Observed::Result(v) => *v,
            Observed::Printed(vs) => vs
                .iter()
                .fold(0i64, |acc, &v| acc.wrapping_mul(31).wrapping_add(v)),
        }
    }
}

/// A registered pipeline.
#[derive(Clone)]
pub struct PipelineSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub description: &'static str,
    pub inputs: Vec<ArrayInput>,
    pub output: Output,
    /// Builds the body over the array parameters.
    pub build: fn(&[ArrVar]) -> Stm,
    /// The same pipeline in the executable semantics.
    pub reference: fn(&[Vec<i64>]) -> OStream,
}

impl fmt::Debug for PipelineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PipelineSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("inputs", &self.inputs)
            .field("output", &self.output)
            .finish()
    }
}

/// Steps allowed for a reference evaluation per generated input element.
const REFERENCE_STEPS_PER_ELEMENT: usize = 200;

impl PipelineSpec {
    /// The input arrays for a size.
    pub fn inputs_for(&self, size: usize) -> Vec<Vec<i64>> {
        self.inputs.iter().map(|a| a.generate(size)).collect()
    }

    /// The generated function, with names numbered from `seed`.
    pub fn function(&self, seed: u32) -> Function {
        let params: Vec<ArrVar> = (1..=self.inputs.len() as u32)
            .map(|k| ArrVar::param(k, TypeRep::Int))
            .collect();
        let body = GenSession::new(seed).run(|| (self.build)(&params));
        Function::new(
            FUNCTION_NAME,
            params.into_iter().map(Param::Array).collect(),
            body,
        )
    }

    fn check_arity(&self, inputs: &[Vec<i64>]) -> Result<(), RegistryError> {
        if inputs.len() != self.inputs.len() {
            return Err(RegistryError::Arity {
                name: self.name.into(),
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        Ok(())
    }

    /// Evaluates the reference semantics on `inputs`.
    pub fn reference_output(&self, inputs: &[Vec<i64>]) -> Result<Observed, RegistryError> {
        self.check_arity(inputs)?;
        let total: usize = inputs.iter().map(Vec::len).sum::<usize>().max(1) + 10;
        let budget = total * total.min(1_000) * REFERENCE_STEPS_PER_ELEMENT;
        let items = run_items(&(self.reference)(inputs), budget)
            .map_err(|_| RegistryError::ReferenceDiverged(self.name.into()))?;
        Ok(match self.output {
            Output::Sum => Observed::Result(
                items
                    .iter()
                    .fold(0i64, |acc, v| acc.wrapping_add(scalar(v))),
            ),
            Output::Print => {
                let mut out = vec![];
                for v in &items {
                    flatten(v, &mut out);
                }
                Observed::Printed(out)
            }
        })
    }

    /// Interprets the generated function (seed 0) on `inputs`.
    pub fn run_generated(&self, inputs: &[Vec<i64>]) -> Result<Observed, RegistryError> {
        self.check_arity(inputs)?;
        self.run_function(&self.function(0), inputs)
    }

    /// Interprets `f`, a function generated for this pipeline.
    pub fn run_function(&self, f: &Function, inputs: &[Vec<i64>]) -> Result<Observed, RegistryError> {
        let fail = |message: String| RegistryError::Run {
            name: self.name.into(),
            message,
        };
        let out = Interpreter::default()
            .run_ints(f, inputs)
            .map_err(|e| fail(e.to_string()))?;
        Ok(match self.output {
            Output::Sum => Observed::Result(
                out.result
                    .and_then(|v| v.as_int())
                    .ok_or_else(|| fail("no integer result".into()))?,
            ),
            Output::Print => Observed::Printed(
                out.printed
                    .iter()
                    .map(|v| match v {
                        Value::Float(x) => *x as i64,
                        v => v.as_int().unwrap_or(0),
                    })
                    .collect(),
            ),
        })
    }
}

/// The outcome of checking one pipeline at one size: the generated code,
/// interpreted, must observe exactly what the reference does, and must pass
/// the fusion audit.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Verification {
    pub name: &'static str,
    pub size: usize,
    pub generated: Option<Observed>,
    pub reference: Option<Observed>,
    pub audit_clean: bool,
    pub problem: Option<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.problem.is_none()
    }
}

impl PipelineSpec {
    /// Checks the generated code against the reference on the inputs for
    /// `size`.
    pub fn verify(&self, size: usize) -> Verification {
        let inputs = self.inputs_for(size);
        let f = self.function(0);
        let report = crate::backend::audit(&f);
        let generated = self.run_function(&f, &inputs);
        let reference = self.reference_output(&inputs);
        let problem = match (&generated, &reference) {
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            (Ok(g), Ok(r)) if g != r => Some(format!(
                "generated code observed checksum {}, reference {}",
                g.checksum(),
                r.checksum()
            )),
            _ if !report.is_clean() => Some(format!("fusion audit: {}", report.violations.join("; "))),
            _ => None,
        };
        Verification {
            name: self.name,
            size,
            generated: generated.ok(),
            reference: reference.ok(),
            audit_clean: report.is_clean(),
            problem,
        }
    }
}

fn scalar(v: &Val) -> i64 {
    match v {
        Val::Int(i) => *i,
        Val::Bool(b) => *b as i64,
        other => panic!("summing a non-scalar item {other}"),
    }
}

fn flatten(v: &Val, out: &mut Vec<i64>) {
    match v {
        Val::Pair(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        v => out.push(scalar(v)),
    }
}

/// A set of pipelines with unique names, in registration order.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: Vec<PipelineSpec>,
}

impl Registry {
    /// Builds a registry; fails on a duplicate name.
    pub fn new(entries: Vec<PipelineSpec>) -> Result<Registry, RegistryError> {
        let mut seen = BTreeSet::new();
        for e in &entries {
            if !seen.insert(e.name) {
                return Err(RegistryError::Duplicate(e.name.into()));
            }
        }
        Ok(Registry { entries })
    }

    /// The benchmark suite followed by the showcases.
    pub fn standard() -> Registry {
        Registry::new(standard_entries()).expect("standard pipeline names are unique")
    }

    pub fn entries(&self) -> &[PipelineSpec] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn benchmarks(&self) -> impl Iterator<Item = &PipelineSpec> {
        self.entries.iter().filter(|e| e.kind == Kind::Benchmark)
    }

    pub fn get(&self, name: &str) -> Result<&PipelineSpec, RegistryError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| RegistryError::Unknown(name.into()))
    }
}

/// The benchmark names, in the suite's order.
pub const BENCHMARKS: [&str; 13] = [
    "sum",
    "sumOfSquares",
    "sumOfSquaresEven",
    "cart",
    "mapsMegamorphic",
    "filtersMegamorphic",
    "dotProduct",
    "flatMapAfterZip",
    "zipAfterFlatMap",
    "flatMapTake",
    "zipFilterFilter",
    "zipFlatMapFlatMap",
    "decode",
];

const V: ArrayInput = ArrayInput {
    name: "v",
    len: LenRule::Size,
    fill: Fill::Mod10,
};
const V_HI: ArrayInput = ArrayInput {
    name: "vHi",
    len: LenRule::Size,
    fill: Fill::Mod10,
};
const V_LO: ArrayInput = ArrayInput {
    name: "vLo",
    len: LenRule::Fixed(10),
    fill: Fill::Mod10,
};
const V_FAZ: ArrayInput = ArrayInput {
    name: "vFaZ",
    len: LenRule::Sqrt,
    fill: Fill::Index,
};
const V_ZAF: ArrayInput = ArrayInput {
    name: "vZaF",
    len: LenRule::Size,
    fill: Fill::Index,
};

/// Reference helpers over oracle values.
mod r {
    use super::*;
    use crate::oracle::sugar as o;

    pub fn arr(a: &[i64]) -> OStream {
        o::of_ints(a)
    }
    pub fn i(v: &Val) -> i64 {
        v.int()
    }
    pub fn map(f: impl Fn(i64) -> i64 + 'static, s: OStream) -> OStream {
        o::map(move |v| Val::Int(f(i(v))), s)
    }
    pub fn filter(p: impl Fn(i64) -> bool + 'static, s: OStream) -> OStream {
        o::filter(move |v| p(i(v)), s)
    }
    pub fn zip_with(f: impl Fn(i64, i64) -> i64 + 'static, a: OStream, b: OStream) -> OStream {
        o::zip_with(move |x, y| Val::Int(f(i(x), i(y))), a, b)
    }
    /// `s |> flat_map (fun x -> of_arr inner |> map (f x))`.
    pub fn flat_map_arr(
        s: OStream,
        inner: &[i64],
        f: impl Fn(i64, i64) -> i64 + Clone + 'static,
    ) -> OStream {
        let inner = inner.to_vec();
        o::flat_map(
            move |x| {
                let (x, f) = (i(x), f.clone());
                map(move |y| f(x, y), arr(&inner))
            },
            s,
        )
    }
}

fn one(a: &[ArrVar]) -> ArrVar {
    a[0]
}

fn two(a: &[ArrVar]) -> (ArrVar, ArrVar) {
    (a[0], a[1])
}

fn len_of(a: &ArrVar) -> crate::Exp {
    crate::backend::array_len(a)
}

fn bench(
    name: &'static str,
    description: &'static str,
    inputs: Vec<ArrayInput>,
    build: fn(&[ArrVar]) -> Stm,
    reference: fn(&[Vec<i64>]) -> OStream,
) -> PipelineSpec {
    PipelineSpec {
        name,
        kind: Kind::Benchmark,
        description,
        inputs,
        output: Output::Sum,
        build,
        reference,
    }
}

fn showcase(
    name: &'static str,
    description: &'static str,
    inputs: Vec<ArrayInput>,
    output: Output,
    build: fn(&[ArrVar]) -> Stm,
    reference: fn(&[Vec<i64>]) -> OStream,
) -> PipelineSpec {
    PipelineSpec {
        name,
        kind: Kind::Showcase,
        description,
        inputs,
        output,
        build,
        reference,
    }
}

/// The bits fed to the run-length encoder: mostly zeros, with a one every
/// 300 positions and after every 7th position in the second half, so both
/// long (> 255) and short runs occur.
fn rle_bits(i: usize, n: usize) -> i64 {
    (i % 300 == 299 || (i >= n / 2 && i % 7 == 6)) as i64
}

/// Encoded bytes: cycling through 0..=255 so 255 occurs.
fn rle_bytes(i: usize, _n: usize) -> i64 {
    ((i * 37) % 256) as i64
}

/// Characters of `d,dd|ddd,...` text ending in a 0 terminator.
fn group_text(i: usize, n: usize) -> i64 {
    if i + 1 == n {
        return 0;
    }
    match i % 6 {
        2 => b',' as i64,
        5 if i % 12 == 11 => b'|' as i64,
        5 => b',' as i64,
        _ => b'0' as i64 + ((i * 7) % 10) as i64,
    }
}

fn standard_entries() -> Vec<PipelineSpec> {
    use crate::oracle::sugar as o;
    vec![
        bench(
            "sum",
            "of_arr v |> sum",
            vec![V],
            |a| of_arr(one(a)).sum_long(),
            |d| r::arr(&d[0]),
        ),
        bench(
            "sumOfSquares",
            "of_arr v |> map (x * x) |> sum",
            vec![V],
            |a| of_arr(one(a)).map(|x| x.clone() * x).sum_long(),
            |d| r::map(|x| x.wrapping_mul(x), r::arr(&d[0])),
        ),
        bench(
            "sumOfSquaresEven",
            "of_arr v |> filter even |> map (x * x) |> sum",
            vec![V],
            |a| {
                of_arr(one(a))
                    .filter(|x| (x.clone() % 2).eq_(0))
                    .map(|x| x.clone() * x)
                    .sum_long()
            },
            |d| r::map(|x| x.wrapping_mul(x), r::filter(|x| x % 2 == 0, r::arr(&d[0]))),
        ),
        bench(
            "cart",
            "of_arr vHi |> flat_map (fun x -> of_arr vLo |> map (x * y)) |> sum",
            vec![V_HI, V_LO],
            |a| {
                let (a1, a2) = two(a);
                of_arr(a1)
                    .flat_map(move |x| of_arr(a2).map(move |y| x.clone() * y))
                    .sum_long()
            },
            |d| r::flat_map_arr(r::arr(&d[0]), &d[1], |x, y| x.wrapping_mul(y)),
        ),
        bench(
            "mapsMegamorphic",
            "of_arr v |> map (* 1) |> ... |> map (* 7) |> sum",
            vec![V],
            |a| {
                (1..=7)
                    .fold(of_arr(one(a)), |s, k| s.map(move |x| x * int(k)))
                    .sum_long()
            },
            |d| (1..=7).fold(r::arr(&d[0]), |s, k| r::map(move |x| x.wrapping_mul(k), s)),
        ),
        bench(
            "filtersMegamorphic",
            "of_arr v |> filter (> 1) |> ... |> filter (> 7) |> sum",
            vec![V],
            |a| {
                (1..=7)
                    .fold(of_arr(one(a)), |s, k| s.filter(move |x| x.gt_(k)))
                    .sum_long()
            },
            |d| (1..=7).fold(r::arr(&d[0]), |s, k| r::filter(move |x| x > k, s)),
        ),
        bench(
            "dotProduct",
            "zip_with ( * ) (of_arr vHi) (of_arr vHi) |> sum",
            vec![V_HI, V_HI],
            |a| {
                let (a1, a2) = two(a);
                zip_with(|x, y| x * y, of_arr(a1), of_arr(a2)).sum_long()
            },
            |d| r::zip_with(|x, y| x.wrapping_mul(y), r::arr(&d[0]), r::arr(&d[1])),
        ),
        bench(
            "flatMapAfterZip",
            "zip_with (+) (of_arr vFaZ) (of_arr vFaZ) |> flat_map (fun x -> of_arr vFaZ |> map (x * y)) |> sum",
            vec![V_FAZ, V_FAZ],
            |a| {
                let (a1, a2) = two(a);
                zip_with(|x, y| x + y, of_arr(a1), of_arr(a1))
                    .flat_map(move |x| of_arr(a2).map(move |y| x.clone() * y))
                    .sum_long()
            },
            |d| {
                let doubled = r::zip_with(|x, y| x.wrapping_add(y), r::arr(&d[0]), r::arr(&d[0]));
                r::flat_map_arr(doubled, &d[1], |x, y| x.wrapping_mul(y))
            },
        ),
        bench(
            "zipAfterFlatMap",
            "zip_with (+) (of_arr vZaF |> flat_map (fun x -> of_arr vZaF |> map (y + x))) (of_arr vZaF) |> sum",
            vec![V_ZAF, V_ZAF],
            |a| {
                let (a1, a2) = two(a);
                let a2c = a2;
                let nested = of_arr(a1)
                    .flat_map(move |x| of_arr(a2c).map(move |y| y + x.clone()));
                zip_with(|x, y| x + y, nested, of_arr(a1)).sum_long()
            },
            |d| {
                let nested = r::flat_map_arr(r::arr(&d[0]), &d[1], |x, y| y.wrapping_add(x));
                r::zip_with(|x, y| x.wrapping_add(y), nested, r::arr(&d[0]))
            },
        ),
        bench(
            "flatMapTake",
            "of_arr vHi |> flat_map (fun x -> of_arr vLo |> map (x * y)) |> take (2 * |vHi|) |> sum",
            vec![V_HI, V_LO],
            |a| {
                let (a1, a2) = two(a);
                let n = len_of(&a1) * 2;
                of_arr(a1)
                    .flat_map(move |x| of_arr(a2).map(move |y| x.clone() * y))
                    .take(n)
                    .sum_long()
            },
            |d| {
                let n = 2 * d[0].len() as i64;
                o::take(n, r::flat_map_arr(r::arr(&d[0]), &d[1], |x, y| x.wrapping_mul(y)))
            },
        ),
        bench(
            "zipFilterFilter",
            "zip_with (+) (of_arr v |> filter (> 7)) (of_arr vHi |> filter (> 5)) |> sum",
            vec![V, V_HI],
            |a| {
                let (a1, a2) = two(a);
                zip_with(
                    |x, y| x + y,
                    of_arr(a1).filter(|x| x.gt_(7)),
                    of_arr(a2).filter(|x| x.gt_(5)),
                )
                .sum_long()
            },
            |d| {
                r::zip_with(
                    |x, y| x.wrapping_add(y),
                    r::filter(|x| x > 7, r::arr(&d[0])),
                    r::filter(|x| x > 5, r::arr(&d[1])),
                )
            },
        ),
        bench(
            "zipFlatMapFlatMap",
            "zip_with (+) (of_arr v |> flat_map (fun x -> of_arr vLo |> map (y * x))) (of_arr vLo |> flat_map (fun x -> of_arr v |> map (y - x))) |> take (2 * |v|) |> sum",
            vec![V, V_LO],
            |a| {
                let (a1, a2) = two(a);
                let n = len_of(&a1) * 2;
                let (b1, b2) = (a1, a2);
                let l = of_arr(a1).flat_map(move |x| of_arr(b2).map(move |y| y * x.clone()));
                let r = of_arr(a2).flat_map(move |x| of_arr(b1).map(move |y| y - x.clone()));
                zip_with(|x, y| x + y, l, r).take(n).sum_long()
            },
            |d| {
                let n = 2 * d[0].len() as i64;
                let l = r::flat_map_arr(r::arr(&d[0]), &d[1], |x, y| y.wrapping_mul(x));
                let rr = r::flat_map_arr(r::arr(&d[1]), &d[0], |x, y| y.wrapping_sub(x));
                o::take(n, r::zip_with(|x, y| x.wrapping_add(y), l, rr))
            },
        ),
        bench(
            "decode",
            "zip_with (||) (of_arr v |> decode) (of_arr v |> decode) |> map int_of_bool |> sum",
            vec![V, V],
            |a| {
                let (a1, a2) = two(a);
                zip_with(|x, y| x.or(y), of_arr(a1).rle_decode(), of_arr(a2).rle_decode())
                    .map(int_of_bool)
                    .sum_long()
            },
            |d| {
                let z = o::zip_with(
                    |x, y| Val::Bool(x.bool() || y.bool()),
                    o::rle_decode(r::arr(&d[0])),
                    o::rle_decode(r::arr(&d[1])),
                );
                o::map(|b| Val::Int(b.bool() as i64), z)
            },
        ),
        showcase(
            "ex2",
            "iota 1 |> map (x * x) |> filter (x mod 17 > 7) |> take 10 |> sum",
            vec![],
            Output::Sum,
            |_| {
                iota(int(1))
                    .map(|x| x.clone() * x)
                    .filter(|x| (x.clone() % 17).gt_(7))
                    .take(int(10))
                    .sum()
            },
            |_| {
                o::take(
                    10,
                    r::filter(|x| x % 17 > 7, r::map(|x| x * x, o::iota(1))),
                )
            },
        ),
        showcase(
            "tupleZip",
            "zip of a filtered, taken array stream with a filtered flat_map of iotas, printing both",
            vec![],
            Output::Print,
            |_| {
                let square = |x: crate::Exp| x.clone() * x;
                let even = |x: &crate::Exp| (x.clone() % 2).eq_(0);
                let l = of_int_array(&[0, 1, 2, 3])
                    .map(square)
                    .take(int(12))
                    .filter(even)
                    .map(square);
                let r = iota(int(1))
                    .flat_map(|x| iota(x + 1).take(int(3)))
                    .filter(even);
                iter(|(x, y)| seq(vec![print(x), print(y)]), zip_raw(l, r))
            },
            |_| {
                let square = |x: i64| x * x;
                let even = |x: i64| x % 2 == 0;
                let l = r::map(
                    square,
                    r::filter(even, o::take(12, r::map(square, r::arr(&[0, 1, 2, 3])))),
                );
                let rr = r::filter(
                    even,
                    o::flat_map(|x| o::take(3, o::iota(x.int() + 1)), o::iota(1)),
                );
                oracle::o_zip(l, rr)
            },
        ),
        showcase(
            "diff",
            "of_arr v |> diff, printed",
            vec![ArrayInput {
                name: "squares",
                len: LenRule::Size,
                fill: Fill::Custom("square", |i, _| (i * i) as i64),
            }],
            Output::Print,
            |a| of_arr(one(a)).diff().print_all(),
            |d| o::diff(r::arr(&d[0])),
        ),
        showcase(
            "rleEncode",
            "of_arr bits |> map (<> 0) |> encode, printed",
            vec![ArrayInput {
                name: "bits",
                len: LenRule::Size,
                fill: Fill::Custom("rle-bits", rle_bits),
            }],
            Output::Print,
            |a| of_arr(one(a)).map(|x| x.ne_(0)).rle_encode().print_all(),
            |d| o::rle_encode(o::map(|x| Val::Bool(x.int() != 0), r::arr(&d[0]))),
        ),
        showcase(
            "rleDecode",
            "of_arr bytes |> decode, printed",
            vec![ArrayInput {
                name: "bytes",
                len: LenRule::Size,
                fill: Fill::Custom("rle-bytes", rle_bytes),
            }],
            Output::Print,
            |a| of_arr(one(a)).rle_decode().print_all(),
            |d| o::rle_decode(r::arr(&d[0])),
        ),
        showcase(
            "groupAggregate",
            "chars |> parse_ints |> group_by_aggregate ',' (+) |> group_by_aggregate '|' max, printed",
            vec![ArrayInput {
                name: "text",
                len: LenRule::Size,
                fill: Fill::Custom("group-text", group_text),
            }],
            Output::Print,
            |a| {
                let s = parse_ints(of_arr(one(a)));
                let s = group_by_aggregate(int(b',' as i64), Monoid::new(int(0), |x, y| x + y), s);
                let s = group_by_aggregate(int(b'|' as i64), Monoid::new(int(INT32_MIN), imax), s);
                iter(|(x, _)| print(x), s)
            },
            |d| {
                let s = o::parse_ints(r::arr(&d[0]));
                let s = o::group_by_aggregate(b',' as i64, 0, i64::wrapping_add, s);
                let s = o::group_by_aggregate(b'|' as i64, INT32_MIN, i64::max, s);
                o::map(|p| p.fst().clone(), s)
            },
        ),
        showcase(
            "fromToFlatMap",
            "from_to 1 |v| |> flat_map (fun x -> from_to x (x + 3)) |> filter odd |> sum",
            vec![V],
            Output::Sum,
            |a| {
                from_to(int(1), len_of(&one(a)))
                    .flat_map(|x| from_to(x.clone(), x + 3))
                    .filter(|x| (x.clone() % 2).eq_(1))
                    .sum_long()
            },
            |d| {
                let n = d[0].len() as i64;
                r::filter(
                    |x| x % 2 == 1,
                    o::flat_map(|x| o::from_to(x.int(), x.int() + 3), o::from_to(1, n)),
                )
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_are_rejected() {
        let e = Registry::standard().entries()[0].clone();
        assert!(matches!(
            Registry::new(vec![e.clone(), e]),
            Err(RegistryError::Duplicate(_))
        ));
        assert!(Registry::new(vec![]).unwrap().names().is_empty());
    }

    #[test]
    fn benchmark_suite_is_complete() {
        let names: Vec<_> = Registry::standard().benchmarks().map(|e| e.name).collect();
        assert_eq!(names, BENCHMARKS);
    }

    #[test]
    fn sum_of_mod10_fill() {
        let reg = Registry::standard();
        let sum = reg.get("sum").unwrap();
        let inputs = sum.inputs_for(100);
        assert_eq!(sum.run_generated(&inputs).unwrap(), Observed::Result(450));
        assert_eq!(sum.reference_output(&inputs).unwrap(), Observed::Result(450));
    }

    #[test]
    fn group_text_is_well_formed() {
        let text: Vec<u8> = (0..24).map(|i| group_text(i, 24) as u8).collect();
        assert_eq!(text.last(), Some(&0));
        assert!(text[..23].iter().all(|c| c.is_ascii_digit() || *c == b',' || *c == b'|'));
    }
}
