//! Liftable equalities as integer combinations `Σ a_i e_i` of the members of
//! a modular subsystem whose interval bound fits in `[1-n, n-1]`.
//!
//! Writing `Σ a_i e_i = Σ_j coef_j m_j` over the monomials `m_j` with bounds
//! `[l_j, u_j]`, the interval of the combination is
//! `[Σ_j min(l_j coef_j, u_j coef_j), Σ_j max(l_j coef_j, u_j coef_j)]`,
//! so liftability is a system of piecewise-linear constraints on `a`. It is
//! solved by a bounded branch and bound; further solutions are forced to be
//! linearly independent of the earlier ones by searching in a basis whose
//! trailing columns span the orthogonal complement of what was found.

mod nullspace;
mod search;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intervals::{calc_bds, monomial_bds, BoundsMap};
use crate::poly::{Monomial, Polynomial};
use nullspace::{dot, integer_null_space, is_zero_vec, max_abs, primitive};
use search::{Search, SearchResult};

pub use nullspace::rank;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IlpError {
    #[error("monomial {0} has no finite bound")]
    UnboundedMonomial(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IlpOutcome {
    /// A coefficient vector `a` (primitive, first nonzero entry arbitrary).
    Found(Vec<BigInt>),
    /// The search space was covered without a solution.
    Infeasible,
    /// Earlier solutions already span every direction.
    Exhausted,
    /// Budget hit, or constants too large for the native search.
    Timeout,
}

#[derive(Clone, Copy, Debug)]
pub struct IlpOptions {
    pub budget: Duration,
    /// Replace bound constants and `n` by `round(2^16 · slog2(·))` during the
    /// search. Solutions are re-verified exactly; infeasibility is then only
    /// a heuristic answer.
    pub scale: bool,
}

impl Default for IlpOptions {
    fn default() -> Self {
        IlpOptions {
            budget: Duration::from_secs(30),
            scale: true,
        }
    }
}

/// Coefficient matrix and monomial bounds of one modular subsystem.
#[derive(Clone, Debug)]
pub struct PhiSystem {
    pub members: Vec<Polynomial>,
    pub monomials: Vec<Monomial>,
    /// `coeffs[i][j]`: coefficient of `monomials[j]` in `members[i]`.
    pub coeffs: Vec<Vec<BigInt>>,
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
    pub modulus: BigInt,
}

pub fn build_phi(eqs: &[Polynomial], b: &BoundsMap, n: &BigInt) -> Result<PhiSystem, IlpError> {
    let mut monomials: Vec<Monomial> = eqs.iter().flat_map(|e| e.monomials().cloned()).collect();
    monomials.push(Monomial::one());
    monomials.sort();
    monomials.dedup();
    let mut lower = Vec::with_capacity(monomials.len());
    let mut upper = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let iv = monomial_bds(b, m);
        match (iv.lo.as_finite(), iv.hi.as_finite()) {
            (Some(l), Some(u)) => {
                lower.push(l.clone());
                upper.push(u.clone());
            }
            _ => return Err(IlpError::UnboundedMonomial(format!("{m:?}"))),
        }
    }
    let coeffs = eqs
        .iter()
        .map(|e| monomials.iter().map(|m| e.coefficient(m)).collect())
        .collect();
    Ok(PhiSystem {
        members: eqs.to_vec(),
        monomials,
        coeffs,
        lower,
        upper,
        modulus: n.clone(),
    })
}

impl PhiSystem {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn coef(&self, a: &[BigInt]) -> Vec<BigInt> {
        (0..self.monomials.len())
            .map(|j| a.iter().zip(&self.coeffs).map(|(ai, row)| ai * &row[j]).sum())
            .collect()
    }

    /// Exact check of the constraint system at `a`.
    pub fn satisfies(&self, a: &[BigInt]) -> bool {
        let n = &self.modulus;
        let cap = n - BigInt::one();
        if a.len() != self.len() || a.iter().any(|x| x.abs() > cap) {
            return false;
        }
        let coef = self.coef(a);
        if is_zero_vec(&coef) {
            return false;
        }
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        for (j, c) in coef.iter().enumerate() {
            let (x, y) = (&self.lower[j] * c, &self.upper[j] * c);
            if x <= y {
                lo += x;
                hi += y;
            } else {
                lo += y;
                hi += x;
            }
        }
        &hi < n && lo > -n
    }

    pub fn combination(&self, a: &[BigInt]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (ai, e) in a.iter().zip(&self.members) {
            if !ai.is_zero() {
                p = &p + &e.scale(ai);
            }
        }
        p
    }

    /// The liftability condition phrased directly on the combination.
    pub fn combination_fits(&self, a: &[BigInt], b: &BoundsMap) -> bool {
        let p = self.combination(a);
        !p.is_zero() && calc_bds(b, &p).within_modulus(&self.modulus)
    }
}

const NATIVE_CAP: i128 = 1 << 32;

fn native(x: &BigInt) -> Option<i128> {
    x.to_i128().filter(|v| v.abs() <= NATIVE_CAP)
}

fn native_vec(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(native).collect()
}

/// `log2 |x|` without overflowing `f64` for large inputs.
fn log2_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.abs().to_f64().unwrap_or(f64::MAX).log2()
    } else {
        let shift = bits - 64;
        let top: BigInt = x.abs() >> shift;
        top.to_f64().unwrap().log2() + shift as f64
    }
}

const SCALE: f64 = 65536.0;

/// `round(2^16 · sign(x) · log2|x|)`, with `slog2(0) = 0`.
fn scaled_slog(x: &BigInt) -> i128 {
    if x.is_zero() {
        return 0;
    }
    let v = (log2_abs(x) * SCALE).round() as i128;
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// Half-width of the coefficient box: `n - 1`, or `max(1, ⌊slog2(n - 1)⌋)`
/// when scaling.
fn coeff_box(n: &BigInt, scale: bool) -> Option<i128> {
    let m = n - BigInt::one();
    if scale {
        Some((log2_abs(&m).floor() as i128).max(1))
    } else {
        native(&m)
    }
}

struct Shape {
    lo: Vec<i128>,
    hi: Vec<i128>,
    limit: i128,
    /// `forms[j][i] = c_ij`
    forms: Vec<Vec<i128>>,
}

fn shape(sys: &PhiSystem, scale: bool) -> Option<Shape> {
    let (lo, hi, limit) = if scale {
        (
            sys.lower.iter().map(scaled_slog).collect(),
            sys.upper.iter().map(scaled_slog).collect(),
            scaled_slog(&sys.modulus),
        )
    } else {
        (
            native_vec(&sys.lower)?,
            native_vec(&sys.upper)?,
            native(&sys.modulus)?,
        )
    };
    let forms = (0..sys.monomials.len())
        .map(|j| sys.coeffs.iter().map(|row| native(&row[j])).collect())
        .collect::<Option<Vec<Vec<i128>>>>()?;
    Some(Shape {
        lo,
        hi,
        limit,
        forms,
    })
}

fn to_big(v: &[i128]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// One nonzero solution of the liftability system, if any.
pub fn solve_feasibility(sys: &PhiSystem, opts: &IlpOptions) -> IlpOutcome {
    exclude_and_resolve(sys, &[], opts)
}

/// A solution linearly independent of every vector in `found`.
pub fn exclude_and_resolve(sys: &PhiSystem, found: &[Vec<BigInt>], opts: &IlpOptions) -> IlpOutcome {
    let l = sys.len();
    if l == 0 {
        return IlpOutcome::Infeasible;
    }
    let deadline = Instant::now() + opts.budget;
    let (Some(sh), Some(k)) = (shape(sys, opts.scale), coeff_box(&sys.modulus, opts.scale)) else {
        return IlpOutcome::Timeout;
    };
    let accept = |a: &[BigInt]| -> Option<Vec<BigInt>> {
        let a = primitive(a.to_vec());
        sys.satisfies(&a).then_some(a)
    };

    if found.is_empty() {
        let s = Search {
            dom: vec![(-k, k); l],
            forms: sh.forms,
            lo: sh.lo,
            hi: sh.hi,
            limit: sh.limit,
            side: vec![],
            symmetric: true,
        };
        let mut hit = None;
        let r = s.run(Some(deadline), &mut |v| {
            hit = accept(&to_big(v));
            hit.is_some()
        });
        return match r {
            SearchResult::Found(_) => IlpOutcome::Found(hit.expect("accepted")),
            SearchResult::Infeasible => IlpOutcome::Infeasible,
            SearchResult::Timeout => IlpOutcome::Timeout,
        };
    }

    let h = integer_null_space(found, l);
    if h.is_empty() {
        return IlpOutcome::Exhausted;
    }
    // a = M b with M = [found^T | H]
    let cols: Vec<&Vec<BigInt>> = found.iter().chain(h.iter()).collect();
    let m_rows: Vec<Vec<BigInt>> = (0..l)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let width = cols.len();
    // D[j][k] = Σ_i M[i][k] c_ij
    let d: Option<Vec<Vec<i128>>> = (0..sys.monomials.len())
        .map(|j| {
            let cj: Vec<BigInt> = sys.coeffs.iter().map(|row| row[j].clone()).collect();
            cols.iter().map(|c| native(&dot(c, &cj))).collect()
        })
        .collect();
    let (Some(d), Some(m_native)) = (
        d,
        m_rows.iter().map(|r| native_vec(r)).collect::<Option<Vec<_>>>(),
    ) else {
        return IlpOutcome::Timeout;
    };
    if max_abs(&m_rows.concat()) > BigInt::from(NATIVE_CAP) {
        return IlpOutcome::Timeout;
    }
    let bmax = k.saturating_mul(l as i128);
    if bmax > NATIVE_CAP {
        return IlpOutcome::Timeout;
    }
    let side: Vec<(Vec<i128>, i128, i128)> = m_native.into_iter().map(|r| (r, -k, k)).collect();
    let mut timed_out = false;
    for idx in found.len()..width {
        let mut dom = vec![(-bmax, bmax); width];
        dom[idx] = (1, bmax);
        let s = Search {
            dom,
            forms: d.clone(),
            lo: sh.lo.clone(),
            hi: sh.hi.clone(),
            limit: sh.limit,
            side: side.clone(),
            symmetric: false,
        };
        let mut hit = None;
        let r = s.run(Some(deadline), &mut |bv| {
            let bv = to_big(bv);
            let a: Vec<BigInt> = m_rows.iter().map(|row| dot(row, &bv)).collect();
            hit = accept(&a);
            hit.is_some()
        });
        match r {
            SearchResult::Found(_) => return IlpOutcome::Found(hit.expect("accepted")),
            SearchResult::Infeasible => {}
            SearchResult::Timeout => {
                timed_out = true;
                break;
            }
        }
    }
    if timed_out {
        IlpOutcome::Timeout
    } else {
        IlpOutcome::Infeasible
    }
}

#[derive(Clone, Debug, Default)]
pub struct IlpReport {
    pub lifted: Vec<Polynomial>,
    pub vectors: Vec<Vec<BigInt>>,
    /// Outcome of the round that ended the search.
    pub last: Option<IlpOutcome>,
}

/// Repeatedly solve and exclude until no new independent combination is
/// found; at most one combination per subsystem member.
pub fn ilp_lift_candidates(
    eqs: &[Polynomial],
    b: &BoundsMap,
    n: &BigInt,
    opts: &IlpOptions,
) -> Result<IlpReport, IlpError> {
    let sys = build_phi(eqs, b, n)?;
    let mut report = IlpReport::default();
    let started = Instant::now();
    while report.vectors.len() < sys.len() {
        let remaining = opts.budget.saturating_sub(started.elapsed());
        if remaining.is_zero() {
            report.last = Some(IlpOutcome::Timeout);
            break;
        }
        let round = IlpOptions {
            budget: remaining,
            scale: opts.scale,
        };
        match exclude_and_resolve(&sys, &report.vectors, &round) {
            IlpOutcome::Found(a) => {
                report.lifted.push(sys.combination(&a));
                report.vectors.push(a);
            }
            other => {
                report.last = Some(other);
                break;
            }
        }
    }
    Ok(report)
}

/// Content-normalize a vector so its first nonzero entry is positive.
pub fn canonical_direction(v: &[BigInt]) -> Vec<BigInt> {
    let v = primitive(v.to_vec());
    match v.iter().find(|x| !x.is_zero()) {
        Some(f) if f.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Interval;
    use proptest::prelude::*;

    fn v(i: u32) -> Polynomial {
        Polynomial::var(i)
    }

    fn exact() -> IlpOptions {
        IlpOptions {
            budget: Duration::from_secs(10),
            scale: false,
        }
    }

    #[test]
    fn difference_of_shared_tails() {
        // e1 = x + z + w, e2 = y + z + w with all bounds [0,3] mod 7:
        // neither member fits, their difference does
        let (x, y, z, w) = (v(0), v(1), v(2), v(3));
        let eqs = vec![&(&x + &z) + &w, &(&y + &z) + &w];
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3); 4]);
        let n = BigInt::from(7);
        let sys = build_phi(&eqs, &b, &n).unwrap();
        assert!(!sys.satisfies(&[BigInt::one(), BigInt::zero()]));
        match solve_feasibility(&sys, &exact()) {
            IlpOutcome::Found(a) => {
                assert_eq!(canonical_direction(&a), vec![BigInt::one(), -BigInt::one()]);
                assert_eq!(sys.combination(&a).vars().len(), 2);
            }
            o => panic!("{o:?}"),
        }
        let r = ilp_lift_candidates(&eqs, &b, &n, &exact()).unwrap();
        assert_eq!(r.lifted.len(), 1);
        assert!(matches!(r.last, Some(IlpOutcome::Infeasible)));
    }

    #[test]
    fn scaled_search_finds_same_difference() {
        let (x, y, z, w) = (v(0), v(1), v(2), v(3));
        let eqs = vec![&(&x + &z) + &w, &(&y + &z) + &w];
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3); 4]);
        let r = ilp_lift_candidates(&eqs, &b, &BigInt::from(7), &IlpOptions::default()).unwrap();
        assert_eq!(r.lifted.len(), 1);
    }

    #[test]
    fn unbounded_monomial_is_an_error() {
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3), Interval::unbounded()]);
        let e = build_phi(&[&v(0) + &v(1)], &b, &BigInt::from(5)).unwrap_err();
        assert!(matches!(e, IlpError::UnboundedMonomial(_)));
    }

    #[test]
    fn independent_solutions_until_exhausted() {
        // both members already fit: two independent vectors, then exhausted
        let eqs = vec![&v(0) - &v(1), &v(1) - &Polynomial::one()];
        let b = BoundsMap::from_intervals(vec![Interval::finite(0, 2); 2]);
        let n = BigInt::from(11);
        let r = ilp_lift_candidates(&eqs, &b, &n, &exact()).unwrap();
        assert_eq!(r.vectors.len(), 2);
        assert_eq!(rank(&r.vectors, 2), 2);
        let sys = build_phi(&eqs, &b, &n).unwrap();
        assert_eq!(exclude_and_resolve(&sys, &r.vectors, &exact()), IlpOutcome::Exhausted);
    }

    fn tiny_system() -> impl Strategy<Value = (Vec<Vec<(i64, [u32; 2])>>, Vec<(i64, i64)>, u32)> {
        let term = (-3i64..4, [0u32..3, 0u32..3]);
        (
            prop::collection::vec(prop::collection::vec(term, 1..4), 1..3),
            prop::collection::vec((-3i64..2).prop_flat_map(|lo| (Just(lo), lo..lo + 4)), 2),
            prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]),
        )
    }

    fn materialize(
        sys: &(Vec<Vec<(i64, [u32; 2])>>, Vec<(i64, i64)>, u32),
    ) -> (Vec<Polynomial>, BoundsMap, BigInt) {
        let eqs = sys
            .0
            .iter()
            .map(|ts| {
                Polynomial::from_terms(
                    ts.iter().map(|(c, e)| (BigInt::from(*c), Monomial::from_exponents(e))),
                )
            })
            .collect();
        let b = BoundsMap::from_intervals(sys.1.iter().map(|&(l, u)| Interval::finite(l, u)).collect());
        (eqs, b, BigInt::from(sys.2))
    }

    fn all_vectors(l: usize, k: i64) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for _ in 0..l {
            out = out
                .into_iter()
                .flat_map(|p: Vec<BigInt>| {
                    (-k..=k).map(move |x| {
                        let mut q = p.clone();
                        q.push(BigInt::from(x));
                        q
                    })
                })
                .collect();
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // The linear system describes exactly the combinations whose
        // interval bound fits.
        #[test]
        fn phi_matches_interval_condition(s in tiny_system()) {
            let (eqs, b, n) = materialize(&s);
            let sys = build_phi(&eqs, &b, &n).unwrap();
            let k = s.2 as i64 - 1;
            for a in all_vectors(eqs.len(), k) {
                prop_assert_eq!(sys.satisfies(&a), sys.combination_fits(&a, &b), "a = {:?}", a);
            }
        }

        // The unscaled search is complete: it answers infeasible only when
        // no coefficient vector in the box works.
        #[test]
        fn exact_search_agrees_with_enumeration(s in tiny_system()) {
            let (eqs, b, n) = materialize(&s);
            let sys = build_phi(&eqs, &b, &n).unwrap();
            let k = s.2 as i64 - 1;
            let any = all_vectors(eqs.len(), k).iter().any(|a| sys.satisfies(a));
            match solve_feasibility(&sys, &exact()) {
                IlpOutcome::Found(a) => prop_assert!(sys.satisfies(&a)),
                IlpOutcome::Infeasible => prop_assert!(!any),
                o => prop_assert!(false, "unexpected {:?}", o),
            }
        }

        // Every excluded round returns a vector outside the span so far.
        #[test]
        fn exclusion_increases_rank(s in tiny_system()) {
            let (eqs, b, n) = materialize(&s);
            let r = ilp_lift_candidates(&eqs, &b, &n, &exact()).unwrap();
            prop_assert_eq!(rank(&r.vectors, eqs.len()), r.vectors.len());
            let sys = build_phi(&eqs, &b, &n).unwrap();
            for a in &r.vectors {
                prop_assert!(sys.satisfies(a));
            }
        }
    }
}
