use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::monomial::{Monomial, VarId};

/// A monomial order. Variables are ranked by declaration index: variable 0
/// is the largest under `Lex`, and the revlex tie-break of the graded orders
/// looks at the last variable first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Weighted(Arc<WeightedOrder>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a, b)),
            MonomialOrder::Weighted(w) => w.compare(a, b),
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Weighted(_) => "weighted-revlex",
        }
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Weighted(w) => write!(f, "weighted{:?}", w.bases),
            other => write!(f, "{}", other.name()),
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    let (pa, pb) = (a.powers(), b.powers());
    let (mut i, mut j) = (0, 0);
    loop {
        match (pa.get(i), pb.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va < vb {
                    // a has a positive exponent on an earlier variable.
                    return Ordering::Greater;
                } else if vb < va {
                    return Ordering::Less;
                } else if ea != eb {
                    return ea.cmp(&eb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// Compares `(-e_k, ..., -e_1)`: scanning from the last variable, the
/// monomial with the smaller exponent is the larger one.
fn revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    let (pa, pb) = (a.powers(), b.powers());
    let (mut i, mut j) = (pa.len(), pb.len());
    loop {
        match (i.checked_sub(1), j.checked_sub(1)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some(ii), Some(jj)) => {
                let (va, ea) = pa[ii];
                let (vb, eb) = pb[jj];
                if va > vb {
                    return Ordering::Less;
                } else if vb > va {
                    return Ordering::Greater;
                } else if ea != eb {
                    return eb.cmp(&ea);
                }
                i = ii;
                j = jj;
            }
        }
    }
}

/// Weighted reverse lexicographic order driven by variable bound magnitudes.
///
/// Variable `x_i` carries the weight `log(M_i)` with `M_i = max(|lo_i|, |hi_i|)`,
/// so the weight of a monomial is the logarithm of its interval magnitude
/// `prod M_i^{e_i}`. Comparison is done on that product exactly. Ties fall back
/// to total degree and then to the revlex tail, which is the limit of
/// `log(M_i + eps)` as `eps` goes to zero. A magnitude of 0 is treated as 1.
///
/// Variables with an infinite bound rank above every finite product: the
/// degree in unbounded variables is compared first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedOrder {
    bases: Vec<Option<BigUint>>,
    logs: Vec<LogWeight>,
}

#[derive(Clone, Copy, Debug)]
struct LogWeight(f64);

impl PartialEq for LogWeight {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}
impl Eq for LogWeight {}
impl std::hash::Hash for LogWeight {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state)
    }
}

impl WeightedOrder {
    /// `bases[i]` is `Some(M_i)` for a finite bound magnitude, `None` for an
    /// unbounded variable.
    pub fn new(bases: Vec<Option<BigUint>>) -> Self {
        let bases: Vec<Option<BigUint>> = bases
            .into_iter()
            .map(|b| b.map(|m| if m.is_zero() { BigUint::one() } else { m }))
            .collect();
        let logs = bases
            .iter()
            .map(|b| LogWeight(b.as_ref().map(ln_biguint).unwrap_or(0.0)))
            .collect();
        WeightedOrder { bases, logs }
    }

    pub fn weight_base(&self, v: VarId) -> Option<&BigUint> {
        self.bases.get(v as usize).and_then(|b| b.as_ref())
    }

    pub fn is_unbounded(&self, v: VarId) -> bool {
        matches!(self.bases.get(v as usize), Some(None))
    }

    /// `prod M_i^{e_i}` over the finitely bounded variables of `m`.
    pub fn magnitude(&self, m: &Monomial) -> BigUint {
        let mut acc = BigUint::one();
        for &(v, e) in m.powers() {
            if let Some(Some(b)) = self.bases.get(v as usize) {
                acc *= b.pow(e);
            }
        }
        acc
    }

    fn unbounded_degree(&self, m: &Monomial) -> u32 {
        m.powers()
            .iter()
            .filter(|&&(v, _)| self.is_unbounded(v))
            .map(|&(_, e)| e)
            .sum()
    }

    fn log_weight(&self, m: &Monomial) -> f64 {
        m.powers()
            .iter()
            .map(|&(v, e)| match self.logs.get(v as usize) {
                Some(LogWeight(w)) if !self.is_unbounded(v) => *w * e as f64,
                _ => 0.0,
            })
            .sum()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ua = self.unbounded_degree(a);
        let ub = self.unbounded_degree(b);
        if ua != ub {
            return ua.cmp(&ub);
        }
        let (wa, wb) = (self.log_weight(a), self.log_weight(b));
        let scale = 1.0 + wa.abs().max(wb.abs());
        let weight = if (wa - wb).abs() > 1e-9 * scale {
            wa.partial_cmp(&wb).unwrap_or(Ordering::Equal)
        } else {
            self.magnitude(a).cmp(&self.magnitude(b))
        };
        weight
            .then_with(|| a.degree().cmp(&b.degree()))
            .then_with(|| revlex_tail(a, b))
    }
}

impl fmt::Debug for WeightedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedOrder{:?}", self.bases)
    }
}

fn ln_biguint(x: &BigUint) -> f64 {
    if let Some(f) = x.to_f64() {
        if f.is_finite() {
            return f.ln();
        }
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps)
    }

    #[test]
    fn grevlex_breaks_degree_ties_by_last_variable() {
        let ord = MonomialOrder::GrevLex;
        assert_eq!(ord.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[0, 1]), &m(&[1, 0])), Ordering::Less);
        assert_eq!(ord.compare(&m(&[0, 2]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_compares_first_exponent() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn weighted_prefers_large_bounds() {
        let w = WeightedOrder::new(vec![Some(BigUint::from(1u32)), Some(BigUint::from(1000u32))]);
        let ord = MonomialOrder::Weighted(Arc::new(w));
        // y (magnitude 1000) outranks x^3 (magnitude 1)
        assert_eq!(ord.compare(&m(&[0, 1]), &m(&[3, 0])), Ordering::Greater);
    }

    #[test]
    fn unbounded_variables_dominate() {
        let w = WeightedOrder::new(vec![None, Some(BigUint::from(1_000_000u32))]);
        let ord = MonomialOrder::Weighted(Arc::new(w));
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn weighted_exact_tie_uses_products() {
        // 6 * 6 = 36 = 4 * 9: equal weights, then degree, then revlex
        let w = WeightedOrder::new(vec![
            Some(BigUint::from(6u32)),
            Some(BigUint::from(4u32)),
            Some(BigUint::from(9u32)),
        ]);
        let ord = MonomialOrder::Weighted(Arc::new(w));
        let a = m(&[2, 0, 0]);
        let b = m(&[0, 1, 1]);
        assert_eq!(ord.compare(&a, &b), Ordering::Greater);
    }
}
