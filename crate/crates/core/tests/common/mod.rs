//! Shared generators for the integration tests. Everything is seeded so
//! failures reproduce.
#![allow(dead_code)]

use std::time::Duration;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multimod::calculus::Configuration;
use multimod::frontend::{Literal, ProblemInstance, Relation};
use multimod::intervals::{BoundsMap, Interval};
use multimod::oracle::{brute_force, OracleVerdict};
use multimod::poly::{from_poly, Monomial, Polynomial};
use multimod::settings::SolverSettings;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn random_monomial(r: &mut ChaCha8Rng, nvars: usize, max_deg: u32) -> Monomial {
    let deg = r.gen_range(0..=max_deg);
    let mut exps = vec![0u32; nvars];
    for _ in 0..deg {
        exps[r.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// Up to `max_terms` terms with coefficients in `[-c, c]`; may be zero.
pub fn random_poly(r: &mut ChaCha8Rng, nvars: usize, max_terms: usize, max_deg: u32, c: i64) -> Polynomial {
    let n = r.gen_range(1..=max_terms);
    Polynomial::from_terms((0..n).map(|_| {
        let mut k = 0;
        while k == 0 {
            k = r.gen_range(-c..=c);
        }
        (big(k), random_monomial(r, nvars, max_deg))
    }))
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Random sub-intervals of `[0, top]`.
pub fn random_box(r: &mut ChaCha8Rng, nvars: usize, top: i64) -> Vec<(i64, i64)> {
    (0..nvars)
        .map(|_| {
            let a = r.gen_range(0..=top);
            let b = r.gen_range(0..=top);
            (a.min(b), a.max(b))
        })
        .collect()
}

pub fn bounds_map(bx: &[(i64, i64)]) -> BoundsMap {
    BoundsMap::from_intervals(bx.iter().map(|&(a, b)| Interval::finite(a, b)).collect())
}

pub fn random_point(r: &mut ChaCha8Rng, bx: &[(i64, i64)]) -> Vec<BigInt> {
    bx.iter().map(|&(a, b)| big(r.gen_range(a..=b))).collect()
}

/// Shifts the constant term so that `p` vanishes at `pt`.
pub fn plant(p: &Polynomial, pt: &[BigInt]) -> Polynomial {
    p - &Polynomial::constant(p.eval(pt))
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzShape {
    pub max_vars: usize,
    pub top: i64,
    pub max_literals: usize,
    pub moduli: (i64, i64),
}

impl Default for FuzzShape {
    fn default() -> Self {
        FuzzShape {
            max_vars: 5,
            top: 8,
            max_literals: 6,
            moduli: (2, 11),
        }
    }
}

/// A random instance; with `planted` every equality vanishes at a hidden
/// point (disequalities may still make it unsat).
pub fn random_instance(r: &mut ChaCha8Rng, shape: FuzzShape, planted: bool) -> ProblemInstance {
    let nvars = r.gen_range(1..=shape.max_vars);
    let bx = random_box(r, nvars, shape.top);
    let pt = random_point(r, &bx);
    let mut inst = ProblemInstance::new();
    for (i, name) in names(nvars).iter().enumerate() {
        let v = inst.declare(name);
        inst.push(Literal::bound(v, Relation::Ge, bx[i].0));
        inst.push(Literal::bound(v, Relation::Le, bx[i].1));
    }
    let nlits = r.gen_range(1..=shape.max_literals);
    for _ in 0..nlits {
        let mut p = random_poly(r, nvars, 3, 2, 4);
        let kind = r.gen_range(0..4);
        if planted && kind % 2 == 0 {
            p = plant(&p, &pt);
        }
        let e = from_poly(&p);
        let n = big(r.gen_range(shape.moduli.0..=shape.moduli.1));
        inst.push(match kind {
            0 => Literal::int_eq(e),
            1 => Literal::int_diseq(e),
            2 => Literal::mod_eq(e, n),
            _ => Literal::mod_diseq(e, n),
        });
    }
    inst
}

pub fn oracle_sat(inst: &ProblemInstance) -> bool {
    match brute_force(inst).expect("oracle-feasible instance") {
        OracleVerdict::Sat(_) => true,
        OracleVerdict::Unsat => false,
    }
}

pub fn config_sat(cfg: &Configuration) -> bool {
    oracle_sat(&cfg.to_instance())
}

/// Short budgets for bulk runs.
pub fn quick_settings() -> SolverSettings {
    SolverSettings {
        gb_budget: Duration::from_millis(500),
        ilp_budget: Duration::from_millis(500),
        timeout: Duration::from_secs(5),
        max_nodes: 256,
        ..SolverSettings::default()
    }
}

/// A configuration over `nvars` variables bounded by `bx`, with no
/// constraints yet.
pub fn empty_config(bx: &[(i64, i64)]) -> Configuration {
    let mut c = Configuration::new(names(bx.len()));
    c.bounds = bounds_map(bx);
    c
}

pub fn shuffled<T: Clone>(r: &mut ChaCha8Rng, v: &[T]) -> Vec<T> {
    let mut w = v.to_vec();
    w.shuffle(r);
    w
}
