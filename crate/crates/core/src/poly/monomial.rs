use std::fmt;

/// Index of a problem variable in declaration order.
pub type VarId = u32;

/// A power product `x_{i1}^{e1} * ... * x_{ik}^{ek}`.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by variable with no
/// zero exponents, so equal monomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    powers: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial {
                powers: vec![(v, e)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeated variables and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut powers: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        powers.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { powers: merged }
    }

    /// Dense exponent vector over `nvars` variables.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i as VarId, e)))
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.powers
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        match self.powers.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.powers[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (a, b) = (self.powers[i], other.powers[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.powers {
            while j < other.powers.len() && other.powers[j].0 < v {
                j += 1;
            }
            if j == other.powers.len() || other.powers[j].0 != v || other.powers[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let pairs = other
            .powers
            .iter()
            .map(|&(v, e)| (v, e - self.exponent(v)));
        Some(Monomial::from_pairs(pairs))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (a, b) = (self.powers[i], other.powers[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1.max(b.1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// True if the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        !self.vars().any(|v| other.exponent(v) > 0)
    }

    /// Renders the monomial using the given variable names, e.g. `x^2*y`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.powers
            .iter()
            .map(|&(v, e)| {
                let name = names
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("x{v}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .powers
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_divide() {
        let xy = Monomial::from_pairs([(0, 1), (1, 1)]);
        let x2 = Monomial::var_pow(0, 2);
        let prod = xy.mul(&x2);
        assert_eq!(prod, Monomial::from_pairs([(0, 3), (1, 1)]));
        assert!(x2.divides(&prod));
        assert!(!prod.divides(&x2));
        assert_eq!(x2.quotient_of(&prod), Some(xy.clone()));
        assert_eq!(xy.lcm(&x2), Monomial::from_pairs([(0, 2), (1, 1)]));
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let m = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(m.powers(), &[(1, 2)]);
        assert_eq!(Monomial::from_exponents(&[0, 0]), Monomial::one());
    }
}
