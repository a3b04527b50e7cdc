mod common;

use std::time::Duration;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use multimod::calculus::branch::branch;
use multimod::calculus::measure::Snapshot;
use multimod::calculus::{
    check_unsat, constrain_bounds, lift, lower, refute, refute_instance, saturate, Configuration, Refutation,
    RuleContext, Scope, UnknownReason, Verdict,
};
use multimod::frontend::{parse, split};
use multimod::poly::Polynomial;
use multimod::settings::{LiftStrategy, SolverSettings};

fn x(i: u32) -> Polynomial {
    Polynomial::var(i)
}

fn c(k: i64) -> Polynomial {
    Polynomial::constant(k)
}

#[test]
fn unit_ideal_and_member_diseq() {
    let settings = SolverSettings::default();
    let ctx = RuleContext::new(&settings);
    let mut cfg = empty_config(&[(0, 9), (0, 9)]);
    let n = BigInt::from(7);
    cfg.ensure_modulus(&n).eqs.insert(&x(0) - &c(2));
    cfg.ensure_modulus(&n).diseqs.insert(&x(0).pow(2) - &c(4));
    assert!(matches!(check_unsat(&cfg, &ctx, Scope::All), Some(Refutation::Diseq(..))));
    assert_eq!(check_unsat(&cfg, &ctx, Scope::Integer), None);

    let mut cfg = empty_config(&[(0, 9)]);
    cfg.int.eqs.insert(x(0).scale(&BigInt::from(2)) - c(1));
    assert_eq!(check_unsat(&cfg, &ctx, Scope::All), None, "2x - 1 is not the unit ideal over Z");
    cfg.ensure_modulus(&BigInt::from(4)).eqs.insert(x(0).scale(&BigInt::from(2)) - c(1));
    assert!(matches!(check_unsat(&cfg, &ctx, Scope::Modular), Some(Refutation::One(_))));
}

#[test]
fn empty_bounds_refute() {
    let settings = SolverSettings::default();
    let ctx = RuleContext::new(&settings);
    let mut cfg = empty_config(&[(0, 3)]);
    cfg.int.eqs.insert(&x(0) - &c(5));
    assert!(constrain_bounds(&mut cfg, &ctx, 0));
    assert_eq!(check_unsat(&cfg, &ctx, Scope::All), Some(Refutation::Bounds(0)));
}

#[test]
fn constr_bds_narrows_linear_variables() {
    let settings = SolverSettings::default();
    let ctx = RuleContext::new(&settings);
    // y = 3x + 1 with x in [0, 2] gives y in [1, 7]
    let mut cfg = empty_config(&[(0, 2), (0, 100)]);
    cfg.int.eqs.insert(&(&x(1) - &x(0).scale(&BigInt::from(3))) - &c(1));
    assert!(constrain_bounds(&mut cfg, &ctx, 0));
    assert_eq!(cfg.bounds.get(1).to_string(), "[1, 7]");
}

#[test]
fn every_rule_moves_the_measure() {
    let settings = SolverSettings::default();
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let mut cfg = split(&random_instance(&mut r, FuzzShape::default(), true));
        let ctx = RuleContext::new(&settings);
        for rule in [lift, lower, constrain_bounds] {
            let before = Snapshot::take(&cfg);
            if rule(&mut cfg, &ctx, 0) {
                assert!(Snapshot::take(&cfg).strictly_below(&before), "seed {seed}");
            } else {
                assert_eq!(Snapshot::take(&cfg), before, "seed {seed}");
            }
        }
    }
}

#[test]
fn saturation_reaches_a_fixpoint() {
    let settings = SolverSettings::default();
    for seed in 0..100u64 {
        let mut r = rng(seed);
        let mut cfg = split(&random_instance(&mut r, FuzzShape::default(), true));
        let ctx = RuleContext::new(&settings);
        if saturate(&mut cfg, &ctx, 0).is_none() {
            let before = cfg.clone();
            assert!(!lift(&mut cfg, &ctx, 0));
            assert!(!lower(&mut cfg, &ctx, 0));
            assert!(!constrain_bounds(&mut cfg, &ctx, 0));
            assert_eq!(cfg, before);
        }
    }
}

#[test]
fn zero_or_one_needs_a_prime() {
    let settings = SolverSettings::default();
    let ctx = RuleContext::new(&settings);
    let mut cfg = empty_config(&[(0, 10)]);
    let s = &x(0).pow(2) - &x(0);
    cfg.ensure_modulus(&BigInt::from(6)).eqs.insert(s.clone());
    assert!(branch(&cfg, &ctx).map(|b| b.rule) != Some("ZeroOrOne"));
    let mut cfg = empty_config(&[(0, 10)]);
    cfg.ensure_modulus(&BigInt::from(5)).eqs.insert(s);
    let b = branch(&cfg, &ctx).unwrap();
    assert_eq!(b.rule, "ZeroOrOne");
    assert_eq!(b.children.len(), 2);
}

#[test]
fn rng_lift_offers_three_lifts() {
    let settings = SolverSettings::default();
    let ctx = RuleContext::new(&settings);
    let mut cfg = empty_config(&[(0, 7)]);
    cfg.ensure_modulus(&BigInt::from(6)).eqs.insert(x(0));
    let b = branch(&cfg, &ctx).unwrap();
    assert_eq!(b.rule, "RngLift");
    let lifted: Vec<Polynomial> = b.children.iter().map(|k| k.int.eqs[0].clone()).collect();
    assert_eq!(lifted, vec![&x(0) - &c(6), x(0), &x(0) + &c(6)]);
}

#[test]
fn satisfiable_input_is_unknown() {
    let inst = parse("var x\nx >= 0\nx <= 5\nx - 3 % 7 = 0").unwrap();
    let r = refute_instance(&inst, &SolverSettings::default());
    assert_eq!(r.verdict, Verdict::Unknown(UnknownReason::Saturated));
}

#[test]
fn limits_yield_resource_verdicts() {
    let inst = parse("var x\nx >= 0\nx <= 7\nx % 6 = 0\nx != 0\nx - 6 != 0").unwrap();
    let tight = SolverSettings {
        max_depth: 0,
        ..SolverSettings::default()
    };
    assert_eq!(
        refute_instance(&inst, &tight).verdict,
        Verdict::Unknown(UnknownReason::ResourceLimit)
    );
    assert!(refute_instance(&inst, &SolverSettings::default()).verdict.is_unsat());
}

#[test]
fn verdict_ignores_trace_and_threads() {
    for seed in 0..60u64 {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, FuzzShape::default(), false);
        let base = refute_instance(&inst, &quick_settings());
        let noisy = SolverSettings {
            trace: true,
            threads: 4,
            ..quick_settings()
        };
        let other = refute_instance(&inst, &noisy);
        assert_eq!(base.verdict, other.verdict, "seed {seed}");
        assert!(base.trace.is_empty());
        if other.verdict.is_unsat() {
            assert!(!other.trace.is_empty());
        }
    }
}

#[test]
fn unbounded_variables_still_terminate() {
    let mut cfg = Configuration::new(vec!["x".into(), "y".into()]);
    cfg.int.eqs.insert(&(&x(0) * &x(1)) - &c(6));
    cfg.ensure_modulus(&BigInt::from(5)).diseqs.insert(&x(0) - &c(1));
    let settings = SolverSettings {
        timeout: Duration::from_secs(10),
        ..SolverSettings::default()
    };
    let r = refute(cfg, &settings);
    assert!(!r.verdict.is_unsat());
    assert_eq!(r.stats.measure_violations, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn refutations_are_sound(seed in any::<u64>(), strategy in prop::sample::select(LiftStrategy::ALL.to_vec())) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, FuzzShape { max_vars: 3, ..FuzzShape::default() }, true);
        let settings = SolverSettings { lift_strategy: strategy, ..quick_settings() };
        let res = refute_instance(&inst, &settings);
        if res.verdict.is_unsat() {
            prop_assert!(!oracle_sat(&inst));
        }
        prop_assert_eq!(res.stats.measure_violations, 0);
    }
}
