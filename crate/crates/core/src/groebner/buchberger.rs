//! Buchberger's algorithm for strong Gröbner bases over `Z`, `Z_n` and `Z_p`.
//!
//! Polynomials are dense-sorted term vectors, largest monomial first. Over
//! `Z` and `Z_n` the critical pairs produce both S-polynomials and
//! G-polynomials (gcd combinations of leading coefficients); over `Z_n`
//! every new element also contributes its annihilator multiple. Over a
//! field leading coefficients are 1 and the construction degenerates to the
//! classical one.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::coeffs::Coeffs;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

pub(crate) type Term = (Monomial, BigInt);
pub(crate) type Poly = Vec<Term>;

pub(crate) struct Engine<'a> {
    pub ring: &'a Coeffs,
    pub ord: &'a MonomialOrder,
    pub deadline: Option<Instant>,
    pub field: bool,
}

/// Outcome of a basis computation: the generators and whether the run
/// finished before the deadline.
pub(crate) struct RawBasis {
    pub polys: Vec<Poly>,
    pub complete: bool,
}

impl Engine<'_> {
    pub fn import(&self, p: &Polynomial) -> Poly {
        let mut v: Poly = p
            .terms()
            .map(|(m, c)| (m.clone(), self.ring.norm(c.clone())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        v.sort_by(|a, b| self.ord.compare(&b.0, &a.0));
        v
    }

    pub fn export(p: &Poly) -> Polynomial {
        Polynomial::from_terms(p.iter().map(|(m, c)| (c.clone(), m.clone())))
    }

    /// `p + q * m * g`.
    fn add_scaled(&self, p: &[Term], q: &BigInt, m: &Monomial, g: &[Term]) -> Poly {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut i = 0;
        let mut shifted = g
            .iter()
            .map(|(gm, gc)| (gm.mul(m), self.ring.norm(q * gc)))
            .filter(|(_, c)| !c.is_zero())
            .peekable();
        loop {
            match (p.get(i), shifted.peek()) {
                (None, None) => break,
                (Some(t), None) => {
                    out.push(t.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(shifted.next().unwrap()),
                (Some(t), Some(s)) => match self.ord.compare(&t.0, &s.0) {
                    Ordering::Greater => {
                        out.push(t.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(shifted.next().unwrap()),
                    Ordering::Equal => {
                        let (sm, sc) = shifted.next().unwrap();
                        let c = self.ring.norm(&t.1 + sc);
                        if !c.is_zero() {
                            out.push((sm, c));
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    fn scale(&self, p: &[Term], c: &BigInt) -> Poly {
        p.iter()
            .map(|(m, k)| (m.clone(), self.ring.norm(k * c)))
            .filter(|(_, k)| !k.is_zero())
            .collect()
    }

    pub fn canonical(&self, p: Poly) -> Poly {
        match p.first() {
            None => p,
            Some((_, lc)) => {
                let u = self.ring.canonical_unit(lc);
                if u.is_one() {
                    p
                } else {
                    self.scale(&p, &u)
                }
            }
        }
    }

    /// Basis element with the smallest leading coefficient among those whose
    /// leading monomial divides `m`.
    fn reducer<'b>(&self, m: &Monomial, basis: &[&'b Poly]) -> Option<&'b Poly> {
        let mut best: Option<&Poly> = None;
        for g in basis {
            let (gm, gc) = &g[0];
            if gm.divides(m) && best.is_none_or(|b| gc < &b[0].1) {
                best = Some(g);
                if gc.is_one() {
                    break;
                }
            }
        }
        best
    }

    /// Full normal form: every term is reduced by the basis element with the
    /// smallest dividing leading coefficient, leaving a remainder in
    /// `[0, lc)`.
    pub fn nf(&self, p: Poly, basis: &[&Poly]) -> Poly {
        let mut p = p;
        let mut start = 0;
        let mut out = Vec::new();
        while start < p.len() {
            let (m, c) = p[start].clone();
            let Some(g) = self.reducer(&m, basis) else {
                out.push((m, c));
                start += 1;
                continue;
            };
            let (q, r) = self.ring.divrem(&c, &g[0].1);
            if q.is_zero() {
                out.push((m, c));
                start += 1;
                continue;
            }
            let shift = g[0].0.quotient_of(&m).expect("divisor checked");
            p = self.add_scaled(&p[start + 1..], &(-q), &shift, &g[1..]);
            start = 0;
            if !r.is_zero() {
                out.push((m, r));
            }
        }
        out
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn strongly_divides(&self, h: &Poly, g: &Poly) -> bool {
        h[0].0.divides(&g[0].0) && g[0].1.is_multiple_of(&h[0].1)
    }

    /// S-polynomial and, over non-fields, the G-polynomial of a pair.
    pub fn pair_polys(&self, f: &Poly, g: &Poly) -> Vec<Poly> {
        let (fm, a) = (&f[0].0, &f[0].1);
        let (gm, b) = (&g[0].0, &g[0].1);
        let l = fm.lcm(gm);
        let lf = fm.quotient_of(&l).unwrap();
        let lg = gm.quotient_of(&l).unwrap();
        let mut out = Vec::new();
        if !(self.field && fm.coprime(gm)) {
            let c = a.lcm(b);
            let s = self.add_scaled(&[], &(&c / a), &lf, f);
            out.push(self.add_scaled(&s, &(-(&c / b)), &lg, g));
        }
        if !a.is_multiple_of(b) && !b.is_multiple_of(a) {
            let e = a.extended_gcd(b);
            let s = self.add_scaled(&[], &e.x, &lf, f);
            out.push(self.add_scaled(&s, &e.y, &lg, g));
        }
        out
    }

    pub fn annihilated(&self, f: &Poly) -> Option<Poly> {
        let a = self.ring.annihilator(&f[0].1)?;
        let p = self.scale(f, &a);
        (!p.is_empty()).then_some(p)
    }

    pub fn buchberger(&self, input: Vec<Poly>) -> RawBasis {
        let mut basis: Vec<Option<Poly>> = Vec::new();
        let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
        let mut todo: Vec<Poly> = input.into_iter().filter(|p| !p.is_empty()).collect();
        // process smallest inputs last so larger ones are reduced first
        todo.reverse();
        loop {
            if self.expired() {
                let mut polys: Vec<Poly> = basis.into_iter().flatten().collect();
                polys.extend(todo.into_iter().map(|p| self.canonical(p)));
                return RawBasis {
                    polys,
                    complete: false,
                };
            }
            if let Some(p) = todo.pop() {
                let live: Vec<&Poly> = basis.iter().flatten().collect();
                let h = self.nf(p, &live);
                if h.is_empty() {
                    continue;
                }
                let h = self.canonical(h);
                let mut retired = Vec::new();
                for (k, slot) in basis.iter_mut().enumerate() {
                    if slot.as_ref().is_some_and(|g| self.strongly_divides(&h, g)) {
                        todo.push(slot.take().unwrap());
                        retired.push(k);
                    }
                }
                if !retired.is_empty() {
                    pairs.retain(|(i, j, _)| !retired.contains(i) && !retired.contains(j));
                }
                let idx = basis.len();
                for (k, g) in basis.iter().enumerate() {
                    if let Some(g) = g {
                        pairs.push((k, idx, g[0].0.lcm(&h[0].0)));
                    }
                }
                if let Some(a) = self.annihilated(&h) {
                    todo.push(a);
                }
                basis.push(Some(h));
                continue;
            }
            // normal strategy: smallest lcm first
            let Some(best) = (0..pairs.len()).min_by(|&x, &y| {
                self.ord
                    .compare(&pairs[x].2, &pairs[y].2)
                    .then_with(|| (pairs[x].0, pairs[x].1).cmp(&(pairs[y].0, pairs[y].1)))
            }) else {
                break;
            };
            let (i, j, _) = pairs.swap_remove(best);
            let (f, g) = (basis[i].as_ref().unwrap(), basis[j].as_ref().unwrap());
            todo.extend(self.pair_polys(f, g));
        }
        RawBasis {
            polys: self.minimal_reduced(basis.into_iter().flatten().collect()),
            complete: true,
        }
    }

    /// Drops strongly redundant elements, tail-reduces the rest, and sorts
    /// by leading term.
    pub fn minimal_reduced(&self, mut polys: Vec<Poly>) -> Vec<Poly> {
        polys.sort_by(|p, q| {
            self.ord
                .compare(&p[0].0, &q[0].0)
                .then_with(|| p[0].1.cmp(&q[0].1))
        });
        let mut kept: Vec<Poly> = Vec::new();
        for p in polys {
            if !kept.iter().any(|h| self.strongly_divides(h, &p)) {
                kept.push(p);
            }
        }
        let reduced: Vec<Poly> = (0..kept.len())
            .map(|i| {
                let others: Vec<&Poly> = kept
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g)
                    .collect();
                let g = &kept[i];
                let mut out = vec![g[0].clone()];
                out.extend(self.nf(g[1..].to_vec(), &others));
                out
            })
            .collect();
        let mut reduced = reduced;
        reduced.sort_by(|p, q| self.ord.compare(&q[0].0, &p[0].0));
        reduced
    }
}
