//! Integer intervals with infinite endpoints, bounds maps, and term-wise
//! interval evaluation of polynomials.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial, VarId};

/// An extended integer: a finite value or one of the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Fin(BigInt),
    PosInf,
}

impl Ext {
    pub fn fin<T: Into<BigInt>>(v: T) -> Ext {
        Ext::Fin(v.into())
    }

    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    fn sign(&self) -> Ordering {
        match self {
            Ext::NegInf => Ordering::Less,
            Ext::PosInf => Ordering::Greater,
            Ext::Fin(v) => v.sign_ord(),
        }
    }

    /// Product with `0 * inf = 0`.
    pub fn mul(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            _ => {
                let (sa, sb) = (self.sign(), other.sign());
                if sa == Ordering::Equal || sb == Ordering::Equal {
                    Ext::Fin(BigInt::zero())
                } else if sa == sb {
                    Ext::PosInf
                } else {
                    Ext::NegInf
                }
            }
        }
    }

    pub fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(-v),
        }
    }

    /// Sum for lower endpoints; `-inf` absorbs. Never called with opposite
    /// infinities because lower endpoints are never `+inf`.
    fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            _ => Ext::PosInf,
        }
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Ext) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Ext) -> Ordering {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
            (Ext::NegInf, Ext::NegInf) | (Ext::PosInf, Ext::PosInf) => Ordering::Equal,
            (Ext::NegInf, _) | (_, Ext::PosInf) => Ordering::Less,
            (Ext::PosInf, _) | (_, Ext::NegInf) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "+inf"),
            Ext::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Closed interval `[lo, hi]`. Empty when `lo > hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl Interval {
    pub fn new(lo: Ext, hi: Ext) -> Self {
        Interval { lo, hi }
    }

    pub fn finite<T: Into<BigInt>>(lo: T, hi: T) -> Self {
        Interval {
            lo: Ext::Fin(lo.into()),
            hi: Ext::Fin(hi.into()),
        }
    }

    pub fn point<T: Into<BigInt>>(v: T) -> Self {
        let v = v.into();
        Interval::finite(v.clone(), v)
    }

    pub fn unbounded() -> Self {
        Interval {
            lo: Ext::NegInf,
            hi: Ext::PosInf,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        let v = Ext::Fin(v.clone());
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigInt::zero())
    }

    /// `self ⊆ other`. An empty interval is a subset of everything.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// `self ⊆ [1-n, n-1]`.
    pub fn within_modulus(&self, n: &BigInt) -> bool {
        self.is_subset_of(&Interval::symmetric(&(n - 1)))
    }

    /// `[-k, k]`.
    pub fn symmetric(k: &BigInt) -> Interval {
        Interval::finite(-k.clone(), k.clone())
    }

    /// `max(|lo|, |hi|)`, or `None` if an endpoint is infinite.
    pub fn magnitude(&self) -> Option<BigInt> {
        match (&self.lo, &self.hi) {
            (Ext::Fin(a), Ext::Fin(b)) => Some(a.abs().max(b.abs())),
            _ => None,
        }
    }

    /// Number of integer points minus one, `None` if infinite. Empty gives 0.
    pub fn width(&self) -> Option<BigInt> {
        match (&self.lo, &self.hi) {
            (Ext::Fin(a), Ext::Fin(b)) => Some(if b >= a { b - a } else { BigInt::zero() }),
            _ => None,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.neg().add(&other.hi.neg()).neg(),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        Interval {
            lo: products.iter().min().cloned().unwrap(),
            hi: products.iter().max().cloned().unwrap(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Interval {
        self.mul(&Interval::point(c.clone()))
    }

    /// Repeated multiplication of the interval with itself.
    pub fn pow(&self, e: u32) -> Interval {
        let mut acc = Interval::point(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by a nonzero integer and rounds toward the interior:
    /// `ceil` on the lower endpoint, `floor` on the upper.
    pub fn div_round_inward(&self, a: &BigInt) -> Interval {
        assert!(!a.is_zero(), "division by zero");
        let iv = if a.is_negative() { self.neg() } else { self.clone() };
        let d = a.abs();
        let lo = match &iv.lo {
            Ext::Fin(v) => Ext::Fin(v.div_ceil(&d)),
            other => other.clone(),
        };
        let hi = match &iv.hi {
            Ext::Fin(v) => Ext::Fin(v.div_floor(&d)),
            other => other.clone(),
        };
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Variable bounds, indexed by variable id. Missing entries are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BoundsMap {
    bounds: Vec<Interval>,
}

impl BoundsMap {
    pub fn unbounded(nvars: usize) -> Self {
        BoundsMap {
            bounds: vec![Interval::unbounded(); nvars],
        }
    }

    pub fn from_intervals(bounds: Vec<Interval>) -> Self {
        BoundsMap { bounds }
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn get(&self, v: VarId) -> Interval {
        self.bounds
            .get(v as usize)
            .cloned()
            .unwrap_or_else(Interval::unbounded)
    }

    pub fn set(&mut self, v: VarId, iv: Interval) {
        let i = v as usize;
        if i >= self.bounds.len() {
            self.bounds.resize(i + 1, Interval::unbounded());
        }
        self.bounds[i] = iv;
    }

    /// Intersects the bound of `v` with `iv`; returns true if it changed.
    pub fn tighten(&mut self, v: VarId, iv: &Interval) -> bool {
        let cur = self.get(v);
        let next = cur.intersect(iv);
        if next != cur {
            self.set(v, next);
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Interval)> {
        self.bounds.iter().enumerate().map(|(i, b)| (i as VarId, b))
    }

    pub fn first_empty(&self) -> Option<VarId> {
        self.iter().find(|(_, b)| b.is_empty()).map(|(v, _)| v)
    }

    pub fn all_finite(&self) -> bool {
        self.bounds.iter().all(Interval::is_finite)
    }

    /// Sum of finite widths; `None` if any bound is infinite.
    pub fn total_width(&self) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for b in &self.bounds {
            acc += b.width()?;
        }
        Some(acc)
    }
}

pub fn monomial_bds(b: &BoundsMap, m: &Monomial) -> Interval {
    let mut acc = Interval::point(BigInt::one());
    for &(v, e) in m.powers() {
        acc = acc.mul(&b.get(v).pow(e));
    }
    acc
}

/// Term-wise interval evaluation: each term is bounded independently and the
/// term intervals are summed. Sound, not exact.
pub fn calc_bds(b: &BoundsMap, p: &Polynomial) -> Interval {
    let mut acc = Interval::point(0);
    for (m, c) in p.terms() {
        acc = acc.add(&monomial_bds(b, m).scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(v: VarId) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn product_example() {
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 6), Interval::finite(0, 6)]);
        assert_eq!(calc_bds(&b, &(&x(0) * &x(1))), Interval::finite(0, 36));
        assert_eq!(calc_bds(&b, &Polynomial::constant(5)), Interval::point(5));
    }

    #[test]
    fn naive_square() {
        // [-2,3]*[-2,3] = [-6,9]; negated plus one gives [-8,7]
        let b = BoundsMap::from_intervals(vec![Interval::finite(-2, 3)]);
        let p = &(-&x(0).pow(2)) + &Polynomial::one();
        assert_eq!(calc_bds(&b, &p), Interval::finite(-8, 7));
    }

    #[test]
    fn infinities() {
        let b = BoundsMap::from_intervals(vec![Interval::new(Ext::fin(0), Ext::PosInf)]);
        let r = calc_bds(&b, &(&x(0).scale(&BigInt::from(-2)) + &Polynomial::constant(3)));
        assert_eq!(r, Interval::new(Ext::NegInf, Ext::fin(3)));
        assert_eq!(Ext::PosInf.mul(&Ext::fin(0)), Ext::fin(0));
    }

    #[test]
    fn intersections() {
        assert_eq!(
            Interval::finite(0, 5).intersect(&Interval::finite(3, 9)),
            Interval::finite(3, 5)
        );
        assert!(Interval::finite(0, 2).intersect(&Interval::finite(4, 6)).is_empty());
        assert_eq!(
            Interval::new(Ext::NegInf, Ext::fin(7)).intersect(&Interval::new(Ext::fin(0), Ext::PosInf)),
            Interval::finite(0, 7)
        );
    }

    #[test]
    fn inward_division() {
        let iv = Interval::point(5).div_round_inward(&BigInt::from(2));
        assert_eq!(iv, Interval::finite(3, 2));
        assert_eq!(
            Interval::finite(-7, 7).div_round_inward(&BigInt::from(-2)),
            Interval::finite(-3, 3)
        );
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-4i64..=4, prop::collection::vec(0u32..3, 3)), 1..5).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|(c, e)| (BigInt::from(c), Monomial::from_exponents(&e))),
            )
        })
    }

    fn small_box() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-3i64..=3, 0i64..=3).prop_map(|(lo, w)| (lo, lo + w)), 3)
    }

    proptest! {
        #[test]
        fn calc_bds_contains_every_value(p in small_poly(), bx in small_box()) {
            let b = BoundsMap::from_intervals(bx.iter().map(|&(l, h)| Interval::finite(l, h)).collect());
            let r = calc_bds(&b, &p);
            for a in bx[0].0..=bx[0].1 {
                for c in bx[1].0..=bx[1].1 {
                    for d in bx[2].0..=bx[2].1 {
                        let v = p.eval(&[a.into(), c.into(), d.into()]);
                        prop_assert!(r.contains(&v));
                    }
                }
            }
        }

        #[test]
        fn shrinking_never_widens(p in small_poly(), bx in small_box(), which in 0usize..3) {
            let b = BoundsMap::from_intervals(bx.iter().map(|&(l, h)| Interval::finite(l, h)).collect());
            let mut small = b.clone();
            let (l, h) = bx[which];
            small.set(which as VarId, Interval::finite(l, l + (h - l) / 2));
            prop_assert!(calc_bds(&small, &p).is_subset_of(&calc_bds(&b, &p)));
        }
    }
}
