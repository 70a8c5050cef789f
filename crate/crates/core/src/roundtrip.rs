//! Randomised run-length round trips.
//!
//! Encoding drops a pending count of zeros at the end of the stream, so
//! decoding an encoding gives back the input up to its trailing zeros: the
//! decoded bits are a prefix of the input, and what is missing is fewer
//! than 255 zeros. Each case checks the generated encoder and the generated
//! encode-then-decode pipeline against the reference semantics and against
//! this contract.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::backend::{int_of_bool, ArrVar, Function, GenSession, Interpreter, Param, TypeRep};
use crate::oracle::{run_items, sugar as o, Val, OStream};
use crate::sugar::{of_arr, BYTE_MAX};

/// Steps allowed for interpreting one case.
const STEP_BUDGET: u64 = 20_000_000;

/// A case that broke an expectation.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTripFailure {
    pub index: usize,
    pub bits: Vec<i64>,
    pub problem: String,
}

/// The outcome of a batch of round trips.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundTripReport {
    pub seed: u64,
    pub cases: usize,
    /// Cases with at least one run of more than 255 zeros.
    pub long_runs: usize,
    pub failures: Vec<RoundTripFailure>,
}

impl RoundTripReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

fn bits_function(body: impl FnOnce(ArrVar) -> crate::Stm) -> Function {
    let a = ArrVar::param(1, TypeRep::Int);
    let stm = GenSession::new(0).run(|| body(a));
    Function::new("fn", vec![Param::Array(a)], stm)
}

/// The generated encoder: prints the run lengths of an array of bits.
pub fn encoder() -> Function {
    bits_function(|a| of_arr(a).map(|x| x.ne_(0)).rle_encode().print_all())
}

/// The generated round trip: encodes an array of bits, decodes the counts
/// and prints the bits as 0/1.
pub fn round_trip() -> Function {
    bits_function(|a| {
        of_arr(a)
            .map(|x| x.ne_(0))
            .rle_encode()
            .rle_decode()
            .map(int_of_bool)
            .print_all()
    })
}

fn bits_stream(bits: &[i64]) -> OStream {
    o::of_vec(bits.iter().map(|&b| Val::Bool(b != 0)).collect())
}

fn reference(s: &OStream) -> Result<Vec<i64>, String> {
    let items = run_items(s, 100_000_000).map_err(|n| format!("reference did not finish in {n} steps"))?;
    Ok(items
        .iter()
        .map(|v| match v {
            Val::Bool(b) => *b as i64,
            v => v.int(),
        })
        .collect())
}

fn printed(f: &Function, bits: &[i64]) -> Result<Vec<i64>, String> {
    let out = Interpreter::with_budget(STEP_BUDGET)
        .run_ints(f, &[bits.to_vec()])
        .map_err(|e| e.to_string())?;
    Ok(out.printed.iter().map(|v| v.as_int().unwrap_or(i64::MIN)).collect())
}

/// Whether `decoded` is `bits` up to fewer than 255 trailing zeros.
pub fn within_trailing_contract(bits: &[i64], decoded: &[i64]) -> Result<(), String> {
    let norm: Vec<i64> = bits.iter().map(|&b| (b != 0) as i64).collect();
    if decoded.len() > norm.len() || decoded != &norm[..decoded.len()] {
        return Err(format!(
            "decoded bits are not a prefix of the input ({} decoded, {} input)",
            decoded.len(),
            norm.len()
        ));
    }
    let rest = &norm[decoded.len()..];
    if rest.iter().any(|&b| b != 0) {
        return Err("a one was lost at the end".into());
    }
    if rest.len() >= BYTE_MAX as usize {
        return Err(format!("{} trailing zeros were lost", rest.len()));
    }
    Ok(())
}

/// Checks one array of bits.
pub fn check_case(enc: &Function, rt: &Function, bits: &[i64]) -> Result<(), String> {
    let counts = printed(enc, bits)?;
    let want = reference(&o::rle_encode(bits_stream(bits)))?;
    if counts != want {
        return Err(format!("encoder printed {counts:?}, reference {want:?}"));
    }
    if let Some(c) = counts.iter().find(|&&c| !(0..=BYTE_MAX).contains(&c)) {
        return Err(format!("count {c} does not fit a byte"));
    }
    let decoded = printed(rt, bits)?;
    let want = reference(&o::rle_decode(o::rle_encode(bits_stream(bits))))?;
    if decoded != want {
        return Err(format!("round trip printed {decoded:?}, reference {want:?}"));
    }
    within_trailing_contract(bits, &decoded)
}

/// Random bits as runs of zeros ended by a one; about a third of the runs
/// are longer than a byte can count, and the array may end in zeros.
pub fn random_bits(rng: &mut impl Rng) -> Vec<i64> {
    let runs = rng.gen_range(0..=6);
    let mut bits = vec![];
    for _ in 0..runs {
        let zeros = match rng.gen_range(0..3) {
            0 => rng.gen_range(256..=800),
            1 => rng.gen_range(250..=260),
            _ => rng.gen_range(0..=20),
        };
        bits.extend(std::iter::repeat_n(0, zeros));
        bits.push(1);
    }
    let tail = match rng.gen_range(0..3) {
        0 => 0,
        1 => rng.gen_range(1..255),
        _ => rng.gen_range(255..=600),
    };
    bits.extend(std::iter::repeat_n(0, tail));
    bits
}

fn longest_zero_run(bits: &[i64]) -> usize {
    bits.split(|&b| b != 0).map(<[i64]>::len).max().unwrap_or(0)
}

/// Runs `count` random round trips.
pub fn run_round_trips(seed: u64, count: usize) -> RoundTripReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (enc, rt) = (encoder(), round_trip());
    let mut report = RoundTripReport {
        seed,
        ..RoundTripReport::default()
    };
    for index in 0..count {
        let bits = random_bits(&mut rng);
        report.cases += 1;
        if longest_zero_run(&bits) > BYTE_MAX as usize {
            report.long_runs += 1;
        }
        if let Err(problem) = check_case(&enc, &rt, &bits) {
            report.failures.push(RoundTripFailure { index, bits, problem });
        }
    }
    report
}

/// The counts the generated encoder prints for `bits`.
pub fn encode(bits: &[i64]) -> Result<Vec<i64>, String> {
    printed(&encoder(), bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_accepts_short_trailing_zeros_only() {
        assert!(within_trailing_contract(&[0, 1, 0, 0], &[0, 1]).is_ok());
        assert!(within_trailing_contract(&[0, 1, 1], &[0, 1]).is_err());
        assert!(within_trailing_contract(&[0, 1], &[1]).is_err());
        let mut long = vec![1];
        long.extend([0; 255]);
        assert!(within_trailing_contract(&long, &[1]).is_err());
    }

    #[test]
    fn exactly_255_zeros_encode_to_one_count() {
        assert_eq!(encode(&[0; 255]).unwrap(), vec![255]);
    }

    #[test]
    fn a_few_round_trips() {
        let r = run_round_trips(5, 20);
        assert!(r.ok(), "{:#?}", r.failures);
        assert!(r.long_runs > 0);
    }
}
