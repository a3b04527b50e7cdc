//! Branching rules. ZeroOrOne splits on an affine form `s` when a member
//! (or basis element) of a prime subsystem is a multiple of `s² - s`.
//! RngLift splits a member whose bound is within twice the modulus into its
//! three possible integer values `-n, 0, n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::context::RuleContext;
use super::rules::ring_of;
use super::{Configuration, Modulus};
use crate::groebner::{is_prime, mod_inverse, RingSpec};
use crate::intervals::{calc_bds, Interval};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarId};

/// Square root modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(a);
    }
    if p == &BigInt::from(2) {
        return Some(a);
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    let half = &pm1 >> 1;
    if a.modpow(&half, p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&half, p) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

/// An affine `s` with `f ≡ u·(s² - s)` for a unit `u`, over the prime `p`.
pub fn boolean_form(f: &Polynomial, p: &BigInt) -> Option<Polynomial> {
    if f.total_degree() != 2 {
        return None;
    }
    let f = f.simp(p);
    if p == &BigInt::from(2) {
        return boolean_form_gf2(&f);
    }
    let inv = |x: &BigInt| -> Option<BigInt> { mod_inverse(&x.mod_floor(p), p) };
    let sq = |v: VarId| f.coefficient(&Monomial::var_pow(v, 2)).mod_floor(p);
    let vars = f.vars();
    let t = *vars.iter().find(|&&v| !sq(v).is_zero())?;
    let q = sq(t);
    let two_q_inv = inv(&(BigInt::from(2) * &q))?;
    // s = a0 + a_t·Σ r_j x_j with r_t = 1
    let ratios: Vec<(VarId, BigInt)> = vars
        .iter()
        .map(|&j| {
            let r = if j == t {
                BigInt::one()
            } else {
                let m = Monomial::var(t).mul(&Monomial::var(j));
                (f.coefficient(&m) * &two_q_inv).mod_floor(p)
            };
            (j, r)
        })
        .filter(|(_, r)| !r.is_zero())
        .collect();
    let l = f.coefficient(&Monomial::var(t)).mod_floor(p);
    let k = f.constant_term().mod_floor(p);
    let qi: BigInt = inv(&q)?;
    let u: BigInt = (&l * &l * qi - BigInt::from(4) * &k).mod_floor(p);
    if u.is_zero() {
        return None;
    }
    let at = sqrt_mod(&(&q * inv(&u)?), p)?;
    let ua_inv: BigInt = inv(&(&u * &at))?;
    let half: BigInt = inv(&BigInt::from(2))?;
    let a0: BigInt = ((&l * ua_inv + BigInt::one()) * half).mod_floor(p);
    let mut s = Polynomial::constant(a0);
    for (j, r) in ratios {
        s.add_term((&at * r).mod_floor(p), Monomial::var(j));
    }
    let s = s.simp(p);
    let check = (&(&s * &s) - &s).scale(&u);
    (check.simp(p) == f).then_some(s)
}

/// Over `Z_2`: `f = Σ_{i∈S} (x_i² + x_i)` gives `s = Σ_{i∈S} x_i`.
fn boolean_form_gf2(f: &Polynomial) -> Option<Polynomial> {
    let mut s = Polynomial::zero();
    for (m, c) in f.terms() {
        if c.is_zero() {
            continue;
        }
        match m.powers() {
            [(v, 2)] => {
                if f.coefficient(&Monomial::var(*v)).is_zero() {
                    return None;
                }
                s.add_term(BigInt::one(), Monomial::var(*v));
            }
            [(v, 1)] => {
                if f.coefficient(&Monomial::var_pow(*v, 2)).is_zero() {
                    return None;
                }
            }
            _ => return None,
        }
    }
    (!s.is_zero()).then_some(s)
}

pub struct Branching {
    pub rule: &'static str,
    pub modulus: BigInt,
    pub on: Polynomial,
    pub children: Vec<Configuration>,
}

fn zero_or_one(cfg: &Configuration, ctx: &RuleContext) -> Option<Branching> {
    for (n, sub) in &cfg.modular {
        if sub.eqs.is_empty() || !is_prime(n) {
            continue;
        }
        let ring = RingSpec::modular(n);
        let eqs = sub.eq_list();
        let gb = ctx.gb(&eqs, &ring, &MonomialOrder::GrevLex);
        let pool = eqs.iter().chain(gb.generators.iter());
        for f in pool {
            let Some(s) = boolean_form(f, n) else {
                continue;
            };
            let s1 = (&s - &Polynomial::one()).simp(n);
            if gb.contains(&s).is_yes() || gb.contains(&s1).is_yes() {
                continue;
            }
            let children = [s.clone(), s1]
                .into_iter()
                .map(|e| {
                    let mut c = cfg.clone();
                    c.ensure_modulus(n).eqs.insert(e);
                    c
                })
                .collect();
            return Some(Branching {
                rule: "ZeroOrOne",
                modulus: n.clone(),
                on: s,
                children,
            });
        }
    }
    None
}

fn rng_lift(cfg: &Configuration, ctx: &RuleContext) -> Option<Branching> {
    let int_eqs = cfg.int.eq_list();
    let int_ring = ring_of(&Modulus::Int);
    for (n, sub) in &cfg.modular {
        if sub.eqs.is_empty() {
            continue;
        }
        let eqs = sub.eq_list();
        let gb = ctx.gb(&eqs, &RingSpec::modular(n), &MonomialOrder::GrevLex);
        let signed = gb
            .generators
            .iter()
            .map(|g| Polynomial::from_terms(g.terms().map(|(m, c)| (crate::poly::smod(c, n), m.clone()))));
        let wide = Interval::symmetric(&(n * 2 - 1));
        for e in eqs.iter().cloned().chain(signed) {
            let iv = calc_bds(&cfg.bounds, &e);
            if iv.within_modulus(n) || !iv.is_subset_of(&wide) {
                continue;
            }
            let nn = Polynomial::constant(n.clone());
            let alts = [&e - &nn, e.clone(), &e + &nn];
            if alts
                .iter()
                .any(|a| ctx.member(a, &int_eqs, &int_ring).is_yes())
            {
                continue;
            }
            let children = alts
                .into_iter()
                .map(|a| {
                    let mut c = cfg.clone();
                    c.int.eqs.insert(a);
                    c
                })
                .collect();
            return Some(Branching {
                rule: "RngLift",
                modulus: n.clone(),
                on: e,
                children,
            });
        }
    }
    None
}

/// The first applicable branching, ZeroOrOne before RngLift.
pub fn branch(cfg: &Configuration, ctx: &RuleContext) -> Option<Branching> {
    let b = zero_or_one(cfg, ctx).or_else(|| rng_lift(cfg, ctx))?;
    ctx.bump(|s| match b.rule {
        "ZeroOrOne" => s.zero_or_one += 1,
        _ => s.rng_lift += 1,
    });
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: u32) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn square_roots() {
        for p in [3u32, 5, 7, 13, 17, 97, 65537] {
            let p = BigInt::from(p);
            for a in 1..40u32 {
                let a = BigInt::from(a);
                if let Some(r) = sqrt_mod(&a, &p) {
                    assert_eq!((&r * &r).mod_floor(&p), a.mod_floor(&p));
                }
            }
        }
        assert_eq!(sqrt_mod(&BigInt::from(2), &BigInt::from(5)), None);
    }

    #[test]
    fn plain_boolean_square() {
        let b = v(0);
        let f = &b.pow(2) - &b;
        assert_eq!(boolean_form(&f, &BigInt::from(5)), Some(b));
    }

    #[test]
    fn scaled_shifted_affine_form() {
        // s = 2x + 3y + 1 over Z_7, f = 3(s² - s)
        let p = BigInt::from(7);
        let s = &(&v(0).scale(&2.into()) + &v(1).scale(&3.into())) + &Polynomial::one();
        let f = (&(&s * &s) - &s).scale(&3.into()).simp(&p);
        let got = boolean_form(&f, &p).expect("detected");
        // s is determined up to s ↦ 1 - s
        let other = (&Polynomial::one() - &got).simp(&p);
        assert!(got == s.simp(&p) || other == s.simp(&p), "{got:?}");
    }

    #[test]
    fn gf2_sum_of_squares() {
        let f = &(&v(0).pow(2) + &v(0)) + &(&v(1).pow(2) + &v(1));
        assert_eq!(boolean_form(&f, &BigInt::from(2)), Some(&v(0) + &v(1)));
        assert_eq!(boolean_form(&v(0).pow(2), &BigInt::from(2)), None);
    }

    #[test]
    fn non_boolean_quadratic() {
        let f = &v(0).pow(2) - &Polynomial::constant(2);
        assert_eq!(boolean_form(&f, &BigInt::from(5)), None);
        assert_eq!(boolean_form(&(&v(0) * &v(1)), &BigInt::from(5)), None);
    }

    proptest! {
        #[test]
        fn affine_forms_are_recovered(
            c0 in 0i64..11, c1 in 0i64..11, c2 in 0i64..11, u in 1i64..11
        ) {
            prop_assume!(c1 != 0 || c2 != 0);
            let p = BigInt::from(11);
            let s = Polynomial::from_terms([
                (BigInt::from(c0), Monomial::one()),
                (BigInt::from(c1), Monomial::var(0)),
                (BigInt::from(c2), Monomial::var(1)),
            ]);
            let f = (&(&s * &s) - &s).scale(&BigInt::from(u)).simp(&p);
            let got = boolean_form(&f, &p);
            prop_assert!(got.is_some());
            let got = got.unwrap();
            let s = s.simp(&p);
            let other = (&Polynomial::one() - &got).simp(&p);
            prop_assert!(got == s || other == s);
        }
    }
}
