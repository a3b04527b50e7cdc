mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use multimod::frontend::{parse, parse_native, parse_smtlib, split, to_native, to_smt2, ParseError, ProblemInstance};
use multimod::oracle::{bounding_box, holds};

const SMT: &str = "
(set-logic QF_NIA)
(declare-const x Int)
(declare-fun y () Int)
(assert (and (<= 0 x) (<= x 10) (>= y 0) (< y 7)))
(assert (= (mod (- (* x y) 3) 5) 0))
(assert (not (= (+ x y) 4)))
(assert (distinct x (- 2)))
(check-sat)
";

#[test]
fn smtlib_subset() {
    let inst = parse(SMT).unwrap();
    assert_eq!(inst.names(), vec!["x", "y"]);
    let bx = bounding_box(&inst).unwrap();
    assert_eq!(bx[0], (BigInt::from(0), BigInt::from(10)));
    assert_eq!(bx[1], (BigInt::from(0), BigInt::from(6)));
    assert!(inst.moduli().contains(&BigInt::from(5)));
    // (2, 4): 8 - 3 = 5, and 2 + 4 = 6
    let pt = [BigInt::from(2), BigInt::from(4)];
    assert!(inst.literals().iter().all(|l| holds(l, &pt)));
    let bad = [BigInt::from(1), BigInt::from(3)];
    assert!(!inst.literals().iter().all(|l| holds(l, &bad)));
}

#[test]
fn native_format() {
    let inst = parse("var x y\nx >= 0\nx <= 4\ny >= 0\ny <= 4\nx*x - y % 7 = 0\nx - y != 1").unwrap();
    assert_eq!(inst.num_vars(), 2);
    let cfg = split(&inst);
    assert_eq!(cfg.int.diseqs.len(), 1);
    assert!(cfg.modular.contains_key(&BigInt::from(7)));
}

#[test]
fn errors() {
    assert!(matches!(parse_smtlib("(assert (= x 0))"), Err(ParseError::UndeclaredVariable(v)) if v == "x"));
    assert!(matches!(parse_smtlib("(declare-const x Int)(assert (= x 0)"), Err(ParseError::SyntaxError { .. })));
    assert!(matches!(
        parse_smtlib("(declare-const x Int)(assert (or (= x 0) (= x 1)))"),
        Err(ParseError::UnsupportedConstruct(_))
    ));
    assert!(matches!(parse_smtlib("(declare-const b Bool)"), Err(ParseError::UnsupportedConstruct(_))));
    assert!(parse_native("x >= 0\nx ** 2 = 0").is_err());
}

#[test]
fn empty_input_is_an_empty_conjunction() {
    let inst = parse("").unwrap();
    assert_eq!(inst.num_vars(), 0);
    assert!(inst.literals().is_empty());
}

fn same_meaning(a: &ProblemInstance, b: &ProblemInstance, points: &[Vec<BigInt>]) -> bool {
    a.names() == b.names()
        && a.literals().len() == b.literals().len()
        && points.iter().all(|p| {
            a.literals()
                .iter()
                .zip(b.literals())
                .all(|(x, y)| holds(x, p) == holds(y, p))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn writers_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, FuzzShape::default(), false);
        let bx: Vec<(i64, i64)> = vec![(-3, 9); inst.num_vars()];
        let points: Vec<Vec<BigInt>> = (0..20).map(|_| random_point(&mut r, &bx)).collect();
        let smt = parse(&to_smt2(&inst)).unwrap();
        prop_assert!(same_meaning(&inst, &smt, &points));
        let native = parse(&to_native(&inst)).unwrap();
        prop_assert!(same_meaning(&inst, &native, &points));
    }
}
