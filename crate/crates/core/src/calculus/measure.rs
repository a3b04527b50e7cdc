//! Progress measure of the derivation: bounds only shrink and constraint
//! sets only grow, and every applied rule must make at least one of them
//! move strictly. Ideal growth (as opposed to set growth) is only
//! checkable when the membership query was decided, so rule applications
//! resting on an undecided query are counted separately as unverified.

use num_bigint::BigInt;

use super::Configuration;
use crate::intervals::{Ext, Interval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    bounds: Vec<Interval>,
    int: (usize, usize),
    modular: Vec<(BigInt, usize, usize)>,
}

impl Snapshot {
    pub fn take(cfg: &Configuration) -> Self {
        Snapshot {
            bounds: cfg.bounds.iter().map(|(_, iv)| iv.clone()).collect(),
            int: (cfg.int.eqs.len(), cfg.int.diseqs.len()),
            modular: cfg
                .modular
                .iter()
                .map(|(n, s)| (n.clone(), s.eqs.len(), s.diseqs.len()))
                .collect(),
        }
    }

    /// `self` is strictly further along than `before`.
    pub fn strictly_below(&self, before: &Snapshot) -> bool {
        if self.bounds.len() != before.bounds.len() {
            return false;
        }
        let mut strict = false;
        for (a, b) in self.bounds.iter().zip(&before.bounds) {
            if !a.is_subset_of(b) && !a.is_empty() {
                return false;
            }
            strict |= a != b;
        }
        let pairs = std::iter::once((self.int, before.int)).chain(
            self.modular
                .iter()
                .map(|(n, e, d)| {
                    let old = before
                        .modular
                        .iter()
                        .find(|(m, _, _)| m == n)
                        .map_or((0, 0), |(_, e, d)| (*e, *d));
                    ((*e, *d), old)
                }),
        );
        for ((e, d), (e0, d0)) in pairs {
            if e < e0 || d < d0 {
                return false;
            }
            strict |= e > e0 || d > d0;
        }
        strict
    }

    /// Sum of finite bound widths plus one per infinite endpoint; a coarse
    /// scalar view used in traces.
    pub fn width(&self) -> (BigInt, usize) {
        let mut w = BigInt::from(0);
        let mut inf = 0;
        for iv in &self.bounds {
            match (&iv.lo, &iv.hi) {
                (Ext::Fin(a), Ext::Fin(b)) if a <= b => w += b - a,
                (Ext::Fin(_), Ext::Fin(_)) => {}
                (lo, hi) => inf += usize::from(!lo.is_finite()) + usize::from(!hi.is_finite()),
            }
        }
        (w, inf)
    }
}
