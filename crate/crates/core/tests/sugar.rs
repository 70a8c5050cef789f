//! Generated code for the combinator library, checked by interpretation.

use pipec_core::backend::{
    audit, emit_function, imax, int, print, ArrVar, Function, GenSession, Interpreter, Param,
    Stm, TypeRep,
};
use pipec_core::sugar::{from_to, group_by_aggregate, iota, of_arr, of_int_array, parse_ints, Monoid, INT32_MIN};

fn gen(body: impl FnOnce() -> Stm) -> Function {
    Function::new("fn", vec![], GenSession::new(0).run(body))
}

fn gen1(body: impl FnOnce(ArrVar) -> Stm) -> Function {
    let a = ArrVar::param(1, TypeRep::Int);
    Function::new("fn", vec![Param::Array(a)], GenSession::new(0).run(|| body(a)))
}

fn result(f: &Function, args: &[Vec<i64>]) -> i64 {
    let r = Interpreter::default().run_ints(f, args).unwrap();
    r.result.unwrap().as_int().unwrap()
}

fn printed(f: &Function, args: &[Vec<i64>]) -> Vec<String> {
    Interpreter::default()
        .run_ints(f, args)
        .unwrap()
        .printed
        .iter()
        .map(|v| v.to_string())
        .collect()
}

#[test]
fn squares_filter_take_sum() {
    let f = gen(|| {
        iota(int(1))
            .map(|x| x.clone() * x)
            .filter(|x| (x.clone() % 17).gt_(7))
            .take(int(10))
            .sum()
    });
    let expected: i64 = (1i64..)
        .map(|x| x * x)
        .filter(|x| x % 17 > 7)
        .take(10)
        .sum();
    assert_eq!(result(&f, &[]), expected);
    assert!(audit(&f).is_clean());
}

#[test]
fn from_to_is_inclusive() {
    let f = gen(|| from_to(int(1), int(3)).print_all());
    assert_eq!(printed(&f, &[]), ["1", "2", "3"]);
}

#[test]
fn diff_passes_first_item() {
    let f = gen(|| of_int_array(&[3, 5, 9]).diff().print_all());
    assert_eq!(printed(&f, &[]), ["3", "2", "4"]);
}

#[test]
fn take_while_drop_drop_while_scan() {
    let f = gen(|| iota(int(0)).take_while(|x| x.lt_(4)).print_all());
    assert_eq!(printed(&f, &[]), ["0", "1", "2", "3"]);
    let f = gen1(|a| of_arr(a).drop(int(2)).print_all());
    assert_eq!(printed(&f, &[vec![1, 2, 3, 4]]), ["3", "4"]);
    let f = gen1(|a| of_arr(a).drop_while(|x| x.lt_(3)).print_all());
    assert_eq!(printed(&f, &[vec![1, 5, 2, 4]]), ["5", "2", "4"]);
    let f = gen1(|a| of_arr(a).scan(|s, x| s + x, int(0)).print_all());
    assert_eq!(printed(&f, &[vec![1, 2, 3]]), ["1", "3", "6"]);
}

#[test]
fn rle_encode_counts_zeros() {
    let f = gen1(|a| of_arr(a).map(|x| x.ne_(0)).rle_encode().print_all());
    assert_eq!(printed(&f, &[vec![0, 0, 1, 0, 1]]), ["2", "1"]);
    let f = gen1(|a| of_arr(a).map(|x| x.ne_(0)).rle_encode().print_all());
    assert_eq!(printed(&f, &[vec![0; 255]]), ["255"]);
}

#[test]
fn rle_decode_inverts_encode() {
    let f = gen1(|a| of_arr(a).rle_decode().print_all());
    let out = printed(&f, &[vec![2, 1, 0]]);
    assert_eq!(out, ["0", "0", "1", "0", "1", "1"]);
    let f = gen1(|a| of_arr(a).rle_decode().map(pipec_core::backend::int_of_bool).sum());
    assert_eq!(result(&f, &[vec![255, 3]]), 1);
}

#[test]
fn group_aggregate_maximum_of_sums() {
    let text = b"1,2,3|40,5|6\0";
    let data: Vec<i64> = text.iter().map(|&c| c as i64).collect();
    let f = gen1(|a| {
        let s = parse_ints(of_arr(a));
        let s = group_by_aggregate(int(44), Monoid::new(int(0), |a, b| a + b), s);
        let s = group_by_aggregate(int(124), Monoid::new(int(INT32_MIN), imax), s);
        pipec_core::stream::iter(|(x, _c)| print(x), s)
    });
    assert_eq!(printed(&f, &[data]), ["45"]);
    let _ = emit_function(&f);
}

#[test]
fn zip_of_filtered_array_with_filtered_flat_map() {
    use pipec_core::backend::seq;
    use pipec_core::stream::{iter, zip_raw};
    let f = gen(|| {
        let square = |x: pipec_core::Exp| x.clone() * x;
        let even = |x: &pipec_core::Exp| (x.clone() % 2).eq_(0);
        let l = of_int_array(&[0, 1, 2, 3]).map(square).take(int(12)).filter(even).map(square);
        let r = iota(int(1)).flat_map(|x| iota(x + 1).take(int(3))).filter(even);
        iter(|(x, y)| seq(vec![print(x), print(y)]), zip_raw(l, r))
    });
    assert_eq!(printed(&f, &[]), ["0", "2", "16", "4"]);
    let c = emit_function(&f);
    assert_eq!(c.matches("while").count(), 3, "{c}");
    assert!(c.contains("static const int"), "{c}");
}
