//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! A [`Polynomial`] stores its terms in a canonical map keyed by [`Monomial`],
//! independent of any monomial order. Orders are applied only when a caller
//! asks for a leading term or a sorted view, so one value serves lex, grevlex
//! and the bound-weighted order alike.

mod monomial;
mod order;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::{Monomial, VarId};
pub use order::{MonomialOrder, WeightedOrder};

use crate::frontend::{BinOp, Expression};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn var(v: VarId) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (BigInt, Monomial)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient, zero if absent.
    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variables occurring in the polynomial, ascending.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sorted view of the terms, largest monomial first under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| ord.compare(&b.0, &a.0));
        v
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(BigInt, Monomial), PolyError> {
        let lm = self
            .terms
            .keys()
            .reduce(|a, b| ord.max(a, b))
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok((self.terms[lm].clone(), lm.clone()))
    }

    /// Evaluates at an integer point; `point[i]` is the value of variable `i`.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                t *= point[v as usize].pow(e);
            }
            acc += t;
        }
        acc
    }

    /// Replaces every coefficient `c` by `c smod n` and drops zero terms.
    pub fn simp(&self, n: &BigInt) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (smod(c, n), m.clone())))
    }

    /// Renders with variable names, e.g. `3*x^2*y - 2`. Terms are printed in
    /// grevlex order so the output is stable.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(&MonomialOrder::GrevLex).iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", mag, m.render(names)));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(self.names))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.mul(mb));
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl std::ops::$tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                std::ops::$tr::$f(&self, &rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add add, Sub sub, Mul mul);

/// Signed remainder: the representative of `a mod n` in `(-n/2, n/2]`.
pub fn smod(a: &BigInt, n: &BigInt) -> BigInt {
    let r = a.mod_floor(n);
    if &(&r * 2u32) <= n {
        r
    } else {
        r - n
    }
}

/// Fully expands an expression into a polynomial.
pub fn to_poly(e: &Expression) -> Polynomial {
    match e {
        Expression::Const(c) => Polynomial::constant(c.clone()),
        Expression::Var(v) => Polynomial::var(*v),
        Expression::Bin(op, a, b) => {
            let (pa, pb) = (to_poly(a), to_poly(b));
            match op {
                BinOp::Add => &pa + &pb,
                BinOp::Sub => &pa - &pb,
                BinOp::Mul => &pa * &pb,
            }
        }
    }
}

/// A sum-of-products expression equal to `p`, terms in grevlex order.
pub fn from_poly(p: &Polynomial) -> Expression {
    Expression::sum(p.sorted_terms(&MonomialOrder::GrevLex).into_iter().map(|(m, c)| {
        let factors = m
            .powers()
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(Expression::Var(v), e as usize));
        Expression::product(std::iter::once(Expression::Const(c)).chain(factors))
    }))
}
