//! Liftable-equality candidates from a Gröbner basis of a modular
//! subsystem, computed under an order that ranks monomials by the magnitude
//! of their bounds.
//!
//! Large-magnitude monomials lead, so reduction eliminates them first and
//! the basis tends to contain elements built from small monomials only:
//! exactly the ones whose interval fits in `[1-n, n-1]`.

use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::groebner::{groebner_basis_memo, is_prime, mod_inverse, RingSpec};
use crate::intervals::{calc_bds, monomial_bds, BoundsMap};
use crate::poly::{smod, MonomialOrder, Polynomial, WeightedOrder};

/// Weighted order whose weight for `x_i` is the bound magnitude
/// `max(|lo_i|, |hi_i|)`; unbounded variables outrank everything.
pub fn weighted_order(b: &BoundsMap, nvars: usize) -> MonomialOrder {
    let bases = (0..nvars)
        .map(|v| {
            b.get(v as u32)
                .magnitude()
                .map(|m| m.magnitude().clone())
        })
        .collect();
    MonomialOrder::Weighted(Arc::new(WeightedOrder::new(bases)))
}

#[derive(Clone, Debug, Default)]
pub struct LiftReport {
    /// Basis generators in signed (`smod`) form.
    pub candidates: Vec<Polynomial>,
    /// Candidates (or unit rescalings of them) whose bounds fit.
    pub lifted: Vec<Polynomial>,
    /// Every liftable ideal member reduces to zero modulo `lifted`: all
    /// variables admit 0 and every generator with a liftable leading
    /// monomial was lifted.
    pub complete: bool,
    pub gb_complete: bool,
    pub gb_cached: bool,
}

/// Unit rescalings of `g` over a prime modulus: `g` times the inverse of
/// each coefficient, largest-magnitude coefficient first.
fn rescalings(g: &Polynomial, n: &BigInt) -> Vec<Polynomial> {
    let mut coeffs: Vec<BigInt> = g.terms().map(|(_, c)| c.clone()).collect();
    coeffs.sort_by(|a, b| b.abs().cmp(&a.abs()).then(a.cmp(b)));
    coeffs.dedup();
    coeffs
        .iter()
        .filter_map(|c| mod_inverse(&c.mod_floor(n), n))
        .map(|inv| g.scale(&inv).simp(n))
        .collect()
}

pub fn gb_lift_candidates(
    eqs: &[Polynomial],
    b: &BoundsMap,
    n: &BigInt,
    ord: &MonomialOrder,
    budget: Duration,
) -> LiftReport {
    let ring = RingSpec::modular(n);
    let (gb, cached) = groebner_basis_memo(eqs, &ring, ord, budget);
    let prime = is_prime(n);
    let mut report = LiftReport {
        gb_complete: gb.complete,
        gb_cached: cached,
        ..Default::default()
    };
    let mut all_lm_lifted = true;
    for g in &gb.generators {
        let cand = Polynomial::from_terms(g.terms().map(|(m, c)| (smod(c, n), m.clone())));
        let mut chosen = calc_bds(b, &cand).within_modulus(n).then(|| cand.clone());
        if chosen.is_none() && prime {
            chosen = rescalings(&cand, n)
                .into_iter()
                .find(|r| calc_bds(b, r).within_modulus(n));
        }
        if let Ok((_, lm)) = cand.leading_term(ord) {
            if monomial_bds(b, &lm).within_modulus(n) && chosen.is_none() {
                all_lm_lifted = false;
            }
        }
        report.candidates.push(cand);
        if let Some(c) = chosen {
            report.lifted.push(c);
        }
    }
    let zero_everywhere = (0..b.len()).all(|v| b.get(v as u32).contains_zero());
    report.complete = gb.complete && zero_everywhere && all_lm_lifted;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Interval;
    use crate::poly::Monomial;
    use num_bigint::BigUint;

    fn v(i: u32) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn weights_follow_bound_magnitudes() {
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 1), Interval::finite(0, 1000)]);
        let ord = weighted_order(&b, 2);
        assert_eq!(
            ord.compare(&Monomial::var(1), &Monomial::var_pow(0, 3)),
            std::cmp::Ordering::Greater
        );
        let b = BoundsMap::from_intervals(vec![Interval::finite(-5, 3)]);
        match weighted_order(&b, 1) {
            MonomialOrder::Weighted(w) => assert_eq!(w.weight_base(0), Some(&BigUint::from(5u32))),
            _ => unreachable!(),
        }
    }

    #[test]
    fn equal_bounds_give_grevlex() {
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3); 3]);
        let ord = weighted_order(&b, 3);
        let ms: Vec<Monomial> = [[1, 0, 1], [0, 2, 0], [1, 1, 0], [0, 0, 2], [1, 0, 0]]
            .iter()
            .map(|e| Monomial::from_exponents(e))
            .collect();
        for a in &ms {
            for c in &ms {
                assert_eq!(ord.compare(a, c), MonomialOrder::GrevLex.compare(a, c));
            }
        }
    }

    #[test]
    fn shared_tail_is_eliminated() {
        // variables declared (w, z, y, x): w leads both generators
        let (w, z, y, x) = (v(0), v(1), v(2), v(3));
        let eqs = vec![&(&x + &z) + &w, &(&y + &z) + &w];
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3); 4]);
        let n = BigInt::from(7);
        let r = gb_lift_candidates(&eqs, &b, &n, &weighted_order(&b, 4), Duration::from_secs(5));
        let diff = &x - &y;
        assert!(r.lifted.contains(&diff) || r.lifted.contains(&(-&diff)));
        // w + x + z has a small leading monomial but does not fit
        assert!(!r.complete);
    }

    #[test]
    fn boolean_square_is_liftable() {
        let bb = v(0);
        let eqs = vec![&bb.pow(2) - &bb];
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 1)]);
        let r = gb_lift_candidates(&eqs, &b, &BigInt::from(5), &weighted_order(&b, 1), Duration::from_secs(5));
        assert_eq!(r.lifted, eqs);
    }

    #[test]
    fn zero_outside_bounds_is_incomplete() {
        let eqs = vec![&v(0) - &v(1)];
        let b = BoundsMap::from_intervals(vec![Interval::finite(1, 3), Interval::finite(0, 3)]);
        let r = gb_lift_candidates(&eqs, &b, &BigInt::from(7), &weighted_order(&b, 2), Duration::from_secs(5));
        assert!(!r.complete);
    }
}
