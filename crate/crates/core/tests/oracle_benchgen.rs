mod common;

use num_bigint::BigInt;

use common::*;
use multimod::benchgen::{generate, small_suite, Family, GenError, GenParams};
use multimod::calculus::refute_instance;
use multimod::frontend::parse;
use multimod::oracle::{brute_force, brute_force_with_cap, satisfies, OracleError, OracleVerdict};
use multimod::settings::SolverSettings;

#[test]
fn suite_expectations_hold() {
    for b in small_suite() {
        let oracle = brute_force(&b.instance).unwrap();
        assert_eq!(oracle.is_sat(), b.buggy, "{}", b.name);
        let r = refute_instance(&b.instance, &quick_settings());
        if b.buggy {
            assert!(!r.verdict.is_unsat(), "{} refuted but has a model", b.name);
        }
    }
}

#[test]
fn headers_flag_buggy_variants() {
    let mut g = GenParams::new(Family::Ffs, 5, Some(BigInt::from(53)));
    let good = generate(&g).unwrap();
    g.buggy = true;
    let bad = generate(&g).unwrap();
    assert!(good.header.iter().any(|l| l == "buggy: false"));
    assert!(bad.header.iter().any(|l| l == "buggy: true"));
    assert!(bad.header.iter().any(|l| l == "expected: sat"));
    // the smt2 text carries the header as comments and parses back
    let text = bad.to_smt2();
    assert!(text.lines().any(|l| l.starts_with(';') && l.contains("buggy: true")));
    let back = parse(&text).unwrap();
    assert_eq!(back.literals().len(), bad.instance.literals().len());
}

#[test]
fn buggy_variants_change_one_constant() {
    for family in Family::ALL {
        let (p, q) = match family {
            Family::Motivating => (3, Some(19)),
            Family::Ffs => (5, Some(53)),
            Family::Fbs => (5, None),
            Family::Bfm => (4, Some(17)),
        };
        let mut g = GenParams::new(family, p, q.map(BigInt::from));
        let good = generate(&g).unwrap().instance;
        g.buggy = true;
        let bad = generate(&g).unwrap().instance;
        assert_eq!(good.literals().len(), bad.literals().len());
        let differing = good
            .literals()
            .iter()
            .zip(bad.literals())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(differing, 1, "{family:?}");
        let diff: Vec<_> = good
            .literals()
            .iter()
            .zip(bad.literals())
            .find(|(a, b)| a != b)
            .map(|(a, b)| (a.constants(), b.constants()))
            .into_iter()
            .collect();
        let (ca, cb) = &diff[0];
        assert_eq!(ca.symmetric_difference(cb).count(), 2, "{family:?}: {ca:?} vs {cb:?}");
    }
}

#[test]
fn generation_is_deterministic() {
    for seed in 0..5 {
        let mut g = GenParams::new(Family::Fbs, 7, None);
        g.seed = seed;
        assert_eq!(generate(&g).unwrap().to_smt2(), generate(&g).unwrap().to_smt2());
    }
}

#[test]
fn bad_parameters() {
    assert!(matches!(
        generate(&GenParams::new(Family::Motivating, 4, Some(BigInt::from(19)))),
        Err(GenError::ParameterError(_))
    ));
    assert!(matches!("nope".parse::<Family>(), Err(GenError::UnknownFamily(_))));
}

#[test]
fn oracle_models_satisfy_and_caps_apply() {
    for seed in 0..100u64 {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, FuzzShape::default(), true);
        if let OracleVerdict::Sat(pt) = brute_force(&inst).unwrap() {
            assert!(satisfies(&inst, &pt));
        }
    }
    let inst = parse("var x y\nx >= 0\nx <= 99\ny >= 0\ny <= 99\nx - y = 0").unwrap();
    assert!(matches!(brute_force_with_cap(&inst, 100), Err(OracleError::BoxTooLarge { .. })));
    assert!(brute_force_with_cap(&inst, 10_000).unwrap().is_sat());
}

#[test]
fn motivating_small_primes_are_unsat() {
    let settings = SolverSettings::default();
    for (p, q) in [(3, 19), (5, 53), (7, 101)] {
        let b = generate(&GenParams::new(Family::Motivating, p, Some(BigInt::from(q)))).unwrap();
        assert!(refute_instance(&b.instance, &settings).verdict.is_unsat(), "p={p}");
        assert!(!brute_force(&b.instance).unwrap().is_sat(), "p={p}");
    }
}
