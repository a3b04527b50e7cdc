//! Verification-condition generators for small arithmetic circuits over a
//! prime field: multiprecision field arithmetic on limbs (`ffs`), Montgomery
//! reduction (`fbs`), bignum multiplication/addition with carries (`bfm`),
//! and the running example (`motivating`). Each instance asserts the
//! circuit constraints together with the negation of its correctness
//! property, so a correct circuit yields an unsatisfiable instance. The
//! `buggy` variants break the circuit or the property and are satisfiable.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::frontend::{
    to_native_with_header, to_smt2_with_header, Expression, Literal, ProblemInstance, Relation,
};
use crate::groebner::{is_prime, mod_inverse};
use crate::poly::VarId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Motivating,
    Ffs,
    Fbs,
    Bfm,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Motivating, Family::Ffs, Family::Fbs, Family::Bfm];

    pub fn name(self) -> &'static str {
        match self {
            Family::Motivating => "motivating",
            Family::Ffs => "ffs",
            Family::Fbs => "fbs",
            Family::Bfm => "bfm",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown family `{0}` (expected motivating, ffs, fbs or bfm)")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    ParameterError(String),
}

impl FromStr for Family {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub family: Family,
    /// Field prime (`motivating`, `ffs`, `fbs`) or limb base (`bfm`).
    pub p: BigInt,
    /// Outer modulus; for `fbs` the Montgomery radix `R` (a power of two,
    /// defaulting to the smallest one above `p`).
    pub q: Option<BigInt>,
    pub limbs: usize,
    pub buggy: bool,
    pub seed: u64,
}

impl GenParams {
    pub fn new(family: Family, p: impl Into<BigInt>, q: Option<BigInt>) -> Self {
        GenParams {
            family,
            p: p.into(),
            q,
            limbs: 1,
            buggy: false,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Benchmark {
    pub name: String,
    pub family: Family,
    pub buggy: bool,
    pub instance: ProblemInstance,
    pub header: Vec<String>,
}

impl Benchmark {
    /// `sat` for buggy variants, `unsat` otherwise.
    pub fn expected(&self) -> &'static str {
        if self.buggy {
            "sat"
        } else {
            "unsat"
        }
    }

    pub fn to_smt2(&self) -> String {
        to_smt2_with_header(&self.instance, &self.header)
    }

    pub fn to_native(&self) -> String {
        to_native_with_header(&self.instance, &self.header)
    }
}

struct Builder {
    inst: ProblemInstance,
}

impl Builder {
    fn new() -> Self {
        Builder {
            inst: ProblemInstance::new(),
        }
    }

    fn var(&mut self, name: &str, lo: impl Into<BigInt>, hi: impl Into<BigInt>) -> Expression {
        let v: VarId = self.inst.declare(name);
        self.inst.push(Literal::bound(v, Relation::Ge, lo));
        self.inst.push(Literal::bound(v, Relation::Le, hi));
        Expression::Var(v)
    }

    fn push(&mut self, lit: Literal) {
        self.inst.push(lit);
    }
}

fn c(v: &BigInt) -> Expression {
    Expression::Const(v.clone())
}

fn mul(a: &Expression, b: &Expression) -> Expression {
    Expression::mul(a.clone(), b.clone())
}

fn sub(a: Expression, b: Expression) -> Expression {
    Expression::sub(a, b)
}

fn add(a: Expression, b: Expression) -> Expression {
    Expression::add(a, b)
}

fn require(ok: bool, msg: impl Into<String>) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::ParameterError(msg.into()))
    }
}

/// Running example: `r3 = x + x·y²` computed mod `p` through three
/// range-checked steps mod `q`. Needs `q > 2p²` for the steps to be exact.
pub fn motivating(p: &BigInt, q: &BigInt, buggy: bool) -> Result<ProblemInstance, GenError> {
    require(is_prime(p), "p must be prime")?;
    require(q > &(p * p * 2), "q must exceed 2p^2")?;
    let mut b = Builder::new();
    let top = p - 1u32;
    let x = b.var("x", 0, top.clone());
    let y = b.var("y", 0, top.clone());
    let r1 = b.var("r1", 0, top.clone());
    let c1 = b.var("c1", 0, if buggy { q - 1u32 } else { top.clone() });
    let r2 = b.var("r2", 0, top.clone());
    let c2 = b.var("c2", 0, top.clone());
    let r3 = b.var("r3", 0, top.clone());
    let c3 = b.var("c3", 0, top);
    let pc = |v: &Expression| mul(&c(p), v);
    b.push(Literal::mod_eq(sub(sub(mul(&x, &y), r1.clone()), pc(&c1)), q.clone()));
    b.push(Literal::mod_eq(sub(sub(mul(&r1, &y), r2.clone()), pc(&c2)), q.clone()));
    b.push(Literal::mod_eq(
        sub(sub(add(x.clone(), r2), r3.clone()), pc(&c3)),
        q.clone(),
    ));
    let want = add(x.clone(), mul(&x, &mul(&y, &y)));
    b.push(Literal::mod_diseq(sub(want, r3), p.clone()));
    Ok(b.inst)
}

/// Smallest `β` with `β² >= p`.
fn limb_base(p: &BigInt) -> BigInt {
    let mut b = p.sqrt();
    while &(&b * &b) < p {
        b += 1;
    }
    b.max(BigInt::from(2))
}

fn ffs(p: &BigInt, q: &BigInt, limbs: usize, buggy: bool, seed: u64) -> Result<(String, ProblemInstance), GenError> {
    require(is_prime(p), "p must be prime")?;
    require(q > &(p * p * 2), "q must exceed 2p^2")?;
    let mut b = Builder::new();
    let top = p - 1u32;
    let carry_top = |normal: BigInt| if buggy { q - 1u32 } else { normal };
    match limbs {
        1 => {
            let shape = ChaCha8Rng::seed_from_u64(seed).gen_range(0..3);
            let x = b.var("x", 0, top.clone());
            let y = b.var("y", 0, top.clone());
            let (name, value) = match shape {
                0 => ("mul", mul(&x, &y)),
                1 => ("add", add(x.clone(), y.clone())),
                _ => {
                    let z = b.var("z", 0, top.clone());
                    ("mul-add", add(mul(&x, &y), z))
                }
            };
            let r = b.var("r", 0, top.clone());
            let cv = b.var("c", 0, carry_top(top));
            b.push(Literal::mod_eq(
                sub(sub(value.clone(), r.clone()), mul(&c(p), &cv)),
                q.clone(),
            ));
            b.push(Literal::mod_diseq(sub(value, r), p.clone()));
            Ok((name.to_string(), b.inst))
        }
        2 => {
            let beta = limb_base(p);
            let lt = &beta - 1u32;
            let x0 = b.var("x0", 0, lt.clone());
            let x1 = b.var("x1", 0, lt.clone());
            let y0 = b.var("y0", 0, lt.clone());
            let y1 = b.var("y1", 0, lt);
            let r = b.var("r", 0, top);
            let cv = b.var("c", 0, carry_top(BigInt::one()));
            let value = Expression::sum([
                x0,
                mul(&c(&beta), &x1),
                y0,
                mul(&c(&beta), &y1),
            ]);
            b.push(Literal::mod_eq(
                sub(sub(value.clone(), r.clone()), mul(&c(p), &cv)),
                q.clone(),
            ));
            b.push(Literal::mod_diseq(sub(value, r), p.clone()));
            Ok(("add2".into(), b.inst))
        }
        _ => Err(GenError::ParameterError("ffs supports 1 or 2 limbs".into())),
    }
}

fn radix(p: &BigInt, q: Option<&BigInt>) -> Result<BigInt, GenError> {
    match q {
        Some(r) => {
            require(r > p, "R must exceed p")?;
            require((r & (r - 1u32)).is_zero(), "R must be a power of two")?;
            Ok(r.clone())
        }
        None => {
            let mut r = BigInt::from(2);
            while &r <= p {
                r <<= 1;
            }
            Ok(r)
        }
    }
}

/// Montgomery reduction: `t = (T + m·p) / R` with `m = T·p' mod R`, and the
/// property `t·R ≡ T (mod p)`.
fn fbs(p: &BigInt, q: Option<&BigInt>, limbs: usize, buggy: bool, seed: u64) -> Result<(String, ProblemInstance), GenError> {
    require(is_prime(p) && p.is_odd(), "p must be an odd prime")?;
    let r = radix(p, q)?;
    let pinv = mod_inverse(p, &r).expect("p odd, R a power of two");
    let pprime = (-pinv).mod_floor(&r);
    let mut b = Builder::new();
    let rt = &r - 1u32;
    let two_p = p * 2u32 - 1u32;
    match limbs {
        1 => {
            let variant = ChaCha8Rng::seed_from_u64(seed).gen_range(0..2);
            let (name, tt, property_rhs) = if variant == 0 {
                let tt = b.var("T", 0, p * &r - 1u32);
                ("redc", tt.clone(), tt)
            } else {
                let a = b.var("a", 0, p - 1u32);
                let bb = b.var("b", 0, p - 1u32);
                let tt = b.var("T", 0, (p - 1u32) * (p - 1u32));
                b.push(Literal::int_eq(sub(tt.clone(), mul(&a, &bb))));
                ("montmul", tt, mul(&a, &bb))
            };
            let m = b.var("m", 0, rt);
            let t = b.var("t", 0, two_p);
            b.push(Literal::mod_eq(sub(mul(&tt, &c(&pprime)), m.clone()), r.clone()));
            b.push(Literal::int_eq(sub(add(tt.clone(), mul(&m, &c(p))), mul(&t, &c(&r)))));
            let out = if variant == 0 {
                t
            } else {
                // conditional subtraction u = t - p·s
                let s = b.var("s", 0, 1);
                let u = b.var("u", 0, p - 1u32);
                b.push(Literal::int_eq(sub(sub(t, mul(&c(p), &s)), u.clone())));
                u
            };
            let rr = if buggy { &r + 1u32 } else { r.clone() };
            b.push(Literal::mod_diseq(sub(mul(&out, &c(&rr)), property_rhs), p.clone()));
            Ok((name.into(), b.inst))
        }
        2 => {
            let r2 = &r * &r;
            let tt = b.var("T", 0, p * &r2 - 1u32);
            let m1 = b.var("m1", 0, rt.clone());
            let t1 = b.var("T1", 0, p * &r + p - 1u32);
            let m2 = b.var("m2", 0, rt);
            let t = b.var("t", 0, two_p);
            b.push(Literal::mod_eq(sub(mul(&tt, &c(&pprime)), m1.clone()), r.clone()));
            b.push(Literal::int_eq(sub(add(tt.clone(), mul(&m1, &c(p))), mul(&t1, &c(&r)))));
            b.push(Literal::mod_eq(sub(mul(&t1, &c(&pprime)), m2.clone()), r.clone()));
            b.push(Literal::int_eq(sub(add(t1, mul(&m2, &c(p))), mul(&t, &c(&r)))));
            let rr = if buggy { &r2 + 1u32 } else { r2 };
            b.push(Literal::mod_diseq(sub(mul(&t, &c(&rr)), tt), p.clone()));
            Ok(("redc2".into(), b.inst))
        }
        _ => Err(GenError::ParameterError("fbs supports 1 or 2 limbs".into())),
    }
}

/// Bignum arithmetic with base-`β` limbs checked modulo a field prime `q`;
/// the property is the exact integer identity.
fn bfm(beta: &BigInt, q: &BigInt, limbs: usize, buggy: bool) -> Result<(String, ProblemInstance), GenError> {
    require(beta >= &BigInt::from(2), "limb base must be at least 2")?;
    let mut b = Builder::new();
    let lt = beta - 1u32;
    let pb = if buggy { beta + 1u32 } else { beta.clone() };
    match limbs {
        1 => {
            require(q > &(beta * beta), "q must exceed beta^2")?;
            let x = b.var("x", 0, lt.clone());
            let y = b.var("y", 0, lt.clone());
            let lo = b.var("lo", 0, lt.clone());
            let hi = b.var("hi", 0, lt);
            let circuit = |base: &BigInt| sub(sub(mul(&x, &y), lo.clone()), mul(&c(base), &hi));
            b.push(Literal::mod_eq(circuit(beta), q.clone()));
            b.push(Literal::int_diseq(circuit(&pb)));
            Ok(("mul".into(), b.inst))
        }
        2 => {
            require(q > &(beta * 2), "q must exceed 2 beta")?;
            let x0 = b.var("x0", 0, lt.clone());
            let x1 = b.var("x1", 0, lt.clone());
            let y0 = b.var("y0", 0, lt.clone());
            let y1 = b.var("y1", 0, lt.clone());
            let z0 = b.var("z0", 0, lt.clone());
            let z1 = b.var("z1", 0, lt);
            let c0 = b.var("c0", 0, 1);
            let c1 = b.var("c1", 0, 1);
            b.push(Literal::mod_eq(
                sub(sub(add(x0.clone(), y0.clone()), z0.clone()), mul(&c(beta), &c0)),
                q.clone(),
            ));
            b.push(Literal::mod_eq(
                sub(
                    sub(Expression::sum([x1.clone(), y1.clone(), c0]), z1.clone()),
                    mul(&c(beta), &c1),
                ),
                q.clone(),
            ));
            let full = Expression::sum([
                x0,
                mul(&c(&pb), &x1),
                y0,
                mul(&c(&pb), &y1),
            ]);
            let rhs = Expression::sum([z0, mul(&c(&pb), &z1), mul(&c(&(&pb * &pb)), &c1)]);
            b.push(Literal::int_diseq(sub(full, rhs)));
            Ok(("add2".into(), b.inst))
        }
        _ => Err(GenError::ParameterError("bfm supports 1 or 2 limbs".into())),
    }
}

pub fn generate(params: &GenParams) -> Result<Benchmark, GenError> {
    let p = &params.p;
    let need_q = || {
        params
            .q
            .clone()
            .ok_or_else(|| GenError::ParameterError(format!("family {} needs q", params.family)))
    };
    let (shape, instance) = match params.family {
        Family::Motivating => ("chain".to_string(), motivating(p, &need_q()?, params.buggy)?),
        Family::Ffs => ffs(p, &need_q()?, params.limbs, params.buggy, params.seed)?,
        Family::Fbs => fbs(p, params.q.as_ref(), params.limbs, params.buggy, params.seed)?,
        Family::Bfm => bfm(p, &need_q()?, params.limbs, params.buggy)?,
    };
    let q = params.q.as_ref().map_or("-".to_string(), |q| q.to_string());
    let name = format!(
        "{}-{}-p{}-q{}-l{}{}",
        params.family,
        shape,
        p,
        q,
        params.limbs,
        if params.buggy { "-buggy" } else { "" }
    );
    let header = vec![
        format!("family: {}", params.family),
        format!("shape: {shape}"),
        format!("p: {p}"),
        format!("q: {q}"),
        format!("limbs: {}", params.limbs),
        format!("seed: {}", params.seed),
        format!("buggy: {}", params.buggy),
        format!("expected: {}", if params.buggy { "sat" } else { "unsat" }),
    ];
    Ok(Benchmark {
        name,
        family: params.family,
        buggy: params.buggy,
        instance,
        header,
    })
}

/// Small instances of every family and shape, correct and buggy; all fit
/// the oracle's default box.
pub fn small_suite() -> Vec<Benchmark> {
    let mut out = Vec::new();
    let big = |v: u64| Some(BigInt::from(v));
    let mut configs = vec![
        GenParams::new(Family::Motivating, 3, big(19)),
        GenParams::new(Family::Motivating, 5, big(53)),
    ];
    for seed in 0..6 {
        let mut g = GenParams::new(Family::Ffs, 5, big(53));
        g.seed = seed;
        configs.push(g);
    }
    let mut g = GenParams::new(Family::Ffs, 5, big(53));
    g.limbs = 2;
    configs.push(g);
    for seed in 0..4 {
        let mut g = GenParams::new(Family::Fbs, 5, None);
        g.seed = seed;
        configs.push(g);
    }
    let mut g = GenParams::new(Family::Fbs, 3, big(4));
    g.limbs = 2;
    configs.push(g);
    configs.push(GenParams::new(Family::Bfm, 4, big(17)));
    let mut g = GenParams::new(Family::Bfm, 3, big(7));
    g.limbs = 2;
    configs.push(g);
    for base in configs {
        for buggy in [false, true] {
            let mut g = base.clone();
            g.buggy = buggy;
            if let Ok(b) = generate(&g) {
                if !out.iter().any(|o: &Benchmark| o.name == b.name) {
                    out.push(b);
                }
            }
        }
    }
    out
}

fn next_prime_above(n: &BigInt) -> BigInt {
    let mut c = n + 1u32;
    while !is_prime(&c) {
        c += 1u32;
    }
    c
}

/// Every family and shape over a sweep of small primes (limb bases for
/// `bfm`), correct variants only unless `with_buggy`. The outer modulus is
/// the smallest prime above `2p²`.
pub fn sweep(primes: &[u64], with_buggy: bool) -> Vec<Benchmark> {
    let mut configs = Vec::new();
    for &p in primes {
        let pb = BigInt::from(p);
        let q = next_prime_above(&(&pb * &pb * 2u32));
        configs.push(GenParams::new(Family::Motivating, p, Some(q.clone())));
        for seed in 0..8 {
            let mut g = GenParams::new(Family::Ffs, p, Some(q.clone()));
            g.seed = seed;
            configs.push(g);
        }
        let mut g = GenParams::new(Family::Ffs, p, Some(q.clone()));
        g.limbs = 2;
        configs.push(g);
        if p % 2 == 1 {
            for seed in 0..8 {
                let mut g = GenParams::new(Family::Fbs, p, None);
                g.seed = seed;
                configs.push(g);
            }
            let mut g = GenParams::new(Family::Fbs, p, None);
            g.limbs = 2;
            configs.push(g);
        }
        for limbs in [1, 2] {
            let mut g = GenParams::new(Family::Bfm, p, Some(q.clone()));
            g.limbs = limbs;
            configs.push(g);
        }
    }
    let mut out: Vec<Benchmark> = Vec::new();
    for base in configs {
        for buggy in [false, true] {
            if buggy && !with_buggy {
                continue;
            }
            let mut g = base.clone();
            g.buggy = buggy;
            if let Ok(b) = generate(&g) {
                if !out.iter().any(|o| o.name == b.name) {
                    out.push(b);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force, satisfies, OracleVerdict};

    #[test]
    fn motivating_buggy_witness() {
        let inst = motivating(&3.into(), &19.into(), true).unwrap();
        // x y r1 c1 r2 c2 r3 c3
        let pt: Vec<BigInt> = [1, 1, 0, 13, 0, 0, 1, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert!(satisfies(&inst, &pt));
        let ok = motivating(&3.into(), &19.into(), false).unwrap();
        assert_eq!(brute_force(&ok).unwrap(), OracleVerdict::Unsat);
    }

    #[test]
    fn parameters_are_validated() {
        assert!(motivating(&4.into(), &100.into(), false).is_err());
        assert!(motivating(&3.into(), &18.into(), false).is_err());
        assert!("nope".parse::<Family>().is_err());
        let g = GenParams::new(Family::Ffs, 5, None);
        assert!(generate(&g).is_err());
    }

    #[test]
    fn sweep_covers_every_family() {
        let s = sweep(&[3, 5, 7, 11, 13], false);
        assert!(s.len() >= 30, "{}", s.len());
        for f in Family::ALL {
            assert!(s.iter().any(|b| b.family == f));
        }
        assert!(s.iter().all(|b| !b.buggy));
    }

    #[test]
    fn fbs_example_bounds() {
        let b = (0..16)
            .map(|seed| {
                let mut g = GenParams::new(Family::Fbs, 5, None);
                g.seed = seed;
                generate(&g).unwrap()
            })
            .find(|b| b.header.contains(&"shape: redc".to_string()))
            .unwrap();
        let bx = crate::oracle::bounding_box(&b.instance).unwrap();
        let names = b.instance.names();
        let get = |n: &str| bx[names.iter().position(|x| x == n).unwrap()].clone();
        assert_eq!(get("T"), (BigInt::zero(), BigInt::from(39)));
        assert_eq!(get("m"), (BigInt::zero(), BigInt::from(7)));
        assert_eq!(get("t"), (BigInt::zero(), BigInt::from(9)));
    }

    #[test]
    fn suite_matches_oracle() {
        for b in small_suite() {
            let v = brute_force(&b.instance).unwrap();
            assert_eq!(v.is_sat(), b.buggy, "{}", b.name);
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let mut g = GenParams::new(Family::Ffs, 7, Some(BigInt::from(101)));
        g.seed = 42;
        assert_eq!(generate(&g).unwrap().to_smt2(), generate(&g).unwrap().to_smt2());
    }
}
