//! Ground truth by exhaustive search over the bounding box. Independent of
//! the polynomial machinery: literals are evaluated on their expression
//! trees directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::frontend::{BinOp, Expression, Literal, ProblemInstance, Relation};

/// Default cap on the number of points searched.
pub const DEFAULT_BOX_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("variable `{0}` has no finite bounds")]
    UnboundedVariable(String),
    #[error("search box has {size} points, more than the cap of {cap}")]
    BoxTooLarge { size: BigInt, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// A satisfying assignment, in declaration order.
    Sat(Vec<BigInt>),
    Unsat,
}

impl OracleVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleVerdict::Sat(_))
    }
}

pub fn eval(e: &Expression, point: &[BigInt]) -> BigInt {
    match e {
        Expression::Const(c) => c.clone(),
        Expression::Var(v) => point[*v as usize].clone(),
        Expression::Bin(op, a, b) => {
            let (x, y) = (eval(a, point), eval(b, point));
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
            }
        }
    }
}

pub fn holds(lit: &Literal, point: &[BigInt]) -> bool {
    match lit {
        Literal::Bound {
            var,
            rel,
            value,
            negated,
        } => {
            let x = &point[*var as usize];
            let r = match rel {
                Relation::Le => x <= value,
                Relation::Ge => x >= value,
            };
            r != *negated
        }
        Literal::IntEq { expr, negated } => eval(expr, point).is_zero() != *negated,
        Literal::ModEq {
            expr,
            modulus,
            negated,
        } => eval(expr, point).mod_floor(modulus).is_zero() != *negated,
    }
}

pub fn satisfies(inst: &ProblemInstance, point: &[BigInt]) -> bool {
    inst.literals().iter().all(|l| holds(l, point))
}

/// Per-variable `[lo, hi]` implied by the bound literals alone.
pub fn bounding_box(inst: &ProblemInstance) -> Result<Vec<(BigInt, BigInt)>, OracleError> {
    let n = inst.num_vars();
    let mut lo: Vec<Option<BigInt>> = vec![None; n];
    let mut hi: Vec<Option<BigInt>> = vec![None; n];
    for lit in inst.literals() {
        if let Literal::Bound {
            var,
            rel,
            value,
            negated,
        } = lit
        {
            let v = *var as usize;
            match (rel, negated) {
                (Relation::Ge, false) | (Relation::Le, true) => {
                    let b = if *negated { value + 1 } else { value.clone() };
                    lo[v] = Some(lo[v].take().map_or(b.clone(), |o| o.max(b)));
                }
                (Relation::Le, false) | (Relation::Ge, true) => {
                    let b = if *negated { value - 1 } else { value.clone() };
                    hi[v] = Some(hi[v].take().map_or(b.clone(), |o| o.min(b)));
                }
            }
        }
    }
    let names = inst.names();
    lo.into_iter()
        .zip(hi)
        .enumerate()
        .map(|(i, b)| match b {
            (Some(l), Some(h)) => Ok((l, h)),
            _ => Err(OracleError::UnboundedVariable(names[i].clone())),
        })
        .collect()
}

/// Expression tree lowered to `i128`, valid when every intermediate value
/// is known to stay below `2^100` in magnitude.
enum Fast {
    Const(i128),
    Var(usize),
    Bin(BinOp, Box<Fast>, Box<Fast>),
}

impl Fast {
    fn eval(&self, p: &[i128]) -> i128 {
        match self {
            Fast::Const(c) => *c,
            Fast::Var(v) => p[*v],
            Fast::Bin(op, a, b) => {
                let (x, y) = (a.eval(p), b.eval(p));
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                }
            }
        }
    }
}

/// Magnitude bound of every subexpression, or `None` past `limit`.
fn magnitude(e: &Expression, mags: &[BigInt], limit: &BigInt) -> Option<BigInt> {
    let m = match e {
        Expression::Const(c) => c.abs(),
        Expression::Var(v) => mags[*v as usize].clone(),
        Expression::Bin(op, a, b) => {
            let (x, y) = (magnitude(a, mags, limit)?, magnitude(b, mags, limit)?);
            match op {
                BinOp::Add | BinOp::Sub => x + y,
                BinOp::Mul => x * y,
            }
        }
    };
    (&m < limit).then_some(m)
}

fn lower_fast(e: &Expression) -> Fast {
    match e {
        Expression::Const(c) => Fast::Const(c.to_i128().expect("checked magnitude")),
        Expression::Var(v) => Fast::Var(*v as usize),
        Expression::Bin(op, a, b) => Fast::Bin(*op, Box::new(lower_fast(a)), Box::new(lower_fast(b))),
    }
}

enum FastLit {
    Le(usize, i128, bool),
    Ge(usize, i128, bool),
    Eq(Fast, bool),
    Mod(Fast, i128, bool),
}

fn fast_literals(inst: &ProblemInstance, bx: &[(BigInt, BigInt)]) -> Option<Vec<FastLit>> {
    let limit = BigInt::one() << 100;
    let mags: Vec<BigInt> = bx.iter().map(|(l, h)| l.abs().max(h.abs())).collect();
    inst.literals()
        .iter()
        .map(|lit| {
            Some(match lit {
                Literal::Bound {
                    var,
                    rel,
                    value,
                    negated,
                } => {
                    let v = value.to_i128().filter(|x| x.abs() < (1i128 << 100))?;
                    match rel {
                        Relation::Le => FastLit::Le(*var as usize, v, *negated),
                        Relation::Ge => FastLit::Ge(*var as usize, v, *negated),
                    }
                }
                Literal::IntEq { expr, negated } => {
                    magnitude(expr, &mags, &limit)?;
                    FastLit::Eq(lower_fast(expr), *negated)
                }
                Literal::ModEq {
                    expr,
                    modulus,
                    negated,
                } => {
                    magnitude(expr, &mags, &limit)?;
                    let n = modulus.to_i128().filter(|x| *x < (1i128 << 100))?;
                    FastLit::Mod(lower_fast(expr), n, *negated)
                }
            })
        })
        .collect()
}

fn fast_holds(l: &FastLit, p: &[i128]) -> bool {
    match l {
        FastLit::Le(v, c, neg) => (p[*v] <= *c) != *neg,
        FastLit::Ge(v, c, neg) => (p[*v] >= *c) != *neg,
        FastLit::Eq(e, neg) => (e.eval(p) == 0) != *neg,
        FastLit::Mod(e, n, neg) => (e.eval(p).rem_euclid(*n) == 0) != *neg,
    }
}

pub fn brute_force(inst: &ProblemInstance) -> Result<OracleVerdict, OracleError> {
    brute_force_with_cap(inst, DEFAULT_BOX_CAP)
}

/// Searches the box for a model; points are visited in mixed-radix order
/// with the first declared variable most significant.
pub fn brute_force_with_cap(inst: &ProblemInstance, cap: u64) -> Result<OracleVerdict, OracleError> {
    let bx = bounding_box(inst)?;
    let mut size = BigInt::one();
    for (l, h) in &bx {
        if h < l {
            return Ok(OracleVerdict::Unsat);
        }
        size *= h - l + 1;
    }
    if size > BigInt::from(cap) {
        return Err(OracleError::BoxTooLarge { size, cap });
    }
    let total = size.to_u64().expect("below cap");
    let widths: Vec<u64> = bx.iter().map(|(l, h)| (h - l + 1u32).to_u64().unwrap()).collect();
    let decode = |mut idx: u64| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); bx.len()];
        for i in (0..bx.len()).rev() {
            out[i] = &bx[i].0 + idx % widths[i];
            idx /= widths[i];
        }
        out
    };
    let found = match fast_literals(inst, &bx) {
        Some(lits) => {
            let los: Vec<i128> = bx.iter().map(|(l, _)| l.to_i128().unwrap()).collect();
            (0..total).into_par_iter().find_map_first(|idx| {
                let mut p = vec![0i128; los.len()];
                let mut rest = idx;
                for i in (0..los.len()).rev() {
                    p[i] = los[i] + (rest % widths[i]) as i128;
                    rest /= widths[i];
                }
                lits.iter().all(|l| fast_holds(l, &p)).then_some(idx)
            })
        }
        None => (0..total)
            .into_par_iter()
            .find_map_first(|idx| satisfies(inst, &decode(idx)).then_some(idx)),
    };
    Ok(match found {
        Some(idx) => OracleVerdict::Sat(decode(idx)),
        None => OracleVerdict::Unsat,
    })
}
