//! The non-branching rules: unsatisfiability checks, lifting, lowering and
//! bound propagation. Each rule mutates the configuration in place and
//! reports whether it changed anything.

use std::fmt;

use num_bigint::BigInt;

use super::context::RuleContext;
use super::{Configuration, Modulus};
use crate::groebner::{normalize, Membership, RingSpec};
use crate::intervals::{calc_bds, Interval};
use crate::lift_gb::{gb_lift_candidates, weighted_order};
use crate::lift_ilp::{ilp_lift_candidates, IlpOptions};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarId};
use crate::settings::LiftStrategy;

/// Why a configuration is unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// A variable's bound interval is empty.
    Bounds(VarId),
    /// The equalities of a subsystem generate the unit ideal.
    One(Modulus),
    /// A disequality lies in the ideal of its subsystem's equalities.
    Diseq(Modulus, Polynomial),
}

impl Refutation {
    pub fn rule(&self) -> &'static str {
        match self {
            Refutation::Bounds(_) => "UnsatBds",
            Refutation::One(_) => "UnsatOne",
            Refutation::Diseq(..) => "UnsatDiseq",
        }
    }

    pub fn render(&self, cfg: &Configuration) -> String {
        match self {
            Refutation::Bounds(v) => format!("UnsatBds {}", cfg.names()[*v as usize]),
            Refutation::One(m) => format!("UnsatOne n={m}"),
            Refutation::Diseq(m, p) => format!("UnsatDiseq n={m} {}", cfg.render_poly(p)),
        }
    }
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rule())
    }
}

/// Which subsystems an unsatisfiability check looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Modular,
    Integer,
}

pub(crate) fn ring_of(m: &Modulus) -> RingSpec {
    match m {
        Modulus::Int => RingSpec::integers(),
        Modulus::Mod(n) => RingSpec::modular(n),
    }
}

pub fn check_unsat(cfg: &Configuration, ctx: &RuleContext, scope: Scope) -> Option<Refutation> {
    if let Some(v) = cfg.bounds.first_empty() {
        return Some(Refutation::Bounds(v));
    }
    let mut keys = Vec::new();
    if scope != Scope::Modular {
        keys.push(Modulus::Int);
    }
    if scope != Scope::Integer {
        keys.extend(cfg.moduli().map(|n| Modulus::Mod(n.clone())));
    }
    for m in keys {
        let sub = cfg.subsystem(&m);
        let ring = ring_of(&m);
        for d in &sub.diseqs {
            if normalize(d, &ring).is_zero() {
                return Some(Refutation::Diseq(m.clone(), d.clone()));
            }
        }
        if sub.eqs.is_empty() {
            continue;
        }
        let gb = ctx.gb(&sub.eq_list(), &ring, &MonomialOrder::GrevLex);
        if gb.contains_one().is_yes() {
            return Some(Refutation::One(m));
        }
        for d in &sub.diseqs {
            if gb.contains(d).is_yes() {
                return Some(Refutation::Diseq(m.clone(), d.clone()));
            }
        }
    }
    None
}

fn ilp_candidates(cfg: &Configuration, n: &BigInt, eqs: &[Polynomial], ctx: &RuleContext) -> Vec<Polynomial> {
    let key = (n.clone(), eqs.to_vec(), cfg.bounds.clone());
    if let Some(c) = ctx.ilp_memo.lock().unwrap().get(&key) {
        return c.clone();
    }
    let opts = IlpOptions {
        budget: ctx.ilp_budget(),
        scale: ctx.settings.ilp_scale,
    };
    ctx.bump(|s| s.ilp_calls += 1);
    let lifted = match ilp_lift_candidates(eqs, &cfg.bounds, n, &opts) {
        Ok(r) => r.lifted,
        Err(_) => Vec::new(),
    };
    ctx.bump(|s| s.ilp_found += lifted.len());
    ctx.ilp_memo.lock().unwrap().insert(key, lifted.clone());
    lifted
}

/// Extra candidates for lifting out of `R_n^=`, per the configured strategy.
pub fn strategy_candidates(cfg: &Configuration, n: &BigInt, ctx: &RuleContext) -> Vec<Polynomial> {
    let eqs = cfg.modular[n].eq_list();
    if eqs.is_empty() {
        return Vec::new();
    }
    let gb = |ord: &MonomialOrder| {
        let r = gb_lift_candidates(&eqs, &cfg.bounds, n, ord, ctx.gb_budget());
        ctx.bump(|s| {
            s.gb_calls += 1;
            s.gb_cache_hits += usize::from(r.gb_cached);
            s.gb_incomplete += usize::from(!r.gb_complete);
        });
        r
    };
    match ctx.settings.lift_strategy {
        LiftStrategy::WeightedGb => gb(&weighted_order(&cfg.bounds, cfg.num_vars())).lifted,
        LiftStrategy::UnweightedGb => gb(&MonomialOrder::GrevLex).lifted,
        LiftStrategy::Ilp => ilp_candidates(cfg, n, &eqs, ctx),
        LiftStrategy::GbIlp => {
            let r = gb(&weighted_order(&cfg.bounds, cfg.num_vars()));
            let mut out = r.lifted;
            if !r.complete {
                out.extend(ilp_candidates(cfg, n, &eqs, ctx));
            }
            out
        }
    }
}

/// Adds `p` to `R_∞^=` unless it is zero, already present, or provably in
/// the ideal.
fn add_int_eq(cfg: &mut Configuration, p: Polynomial, ctx: &RuleContext) -> Option<Membership> {
    if p.is_zero() || cfg.int.eqs.contains(&p) {
        return None;
    }
    let m = ctx.member(&p, &cfg.int.eq_list(), &RingSpec::integers());
    if m.is_yes() {
        return None;
    }
    cfg.int.eqs.insert(p);
    Some(m)
}

/// LiftDiseq and LiftEq for every modulus.
pub fn lift(cfg: &mut Configuration, ctx: &RuleContext, depth: usize) -> bool {
    let mut changed = false;
    let moduli: Vec<BigInt> = cfg.moduli().cloned().collect();
    for n in moduli {
        let sub = cfg.modular[&n].clone();
        for d in &sub.diseqs {
            if cfg.int.diseqs.insert(d.clone()) {
                changed = true;
                ctx.bump(|s| s.lift_diseq += 1);
                ctx.log(depth, || format!("LiftDiseq n={n} {}", cfg.render_poly(d)));
            }
        }
        if sub.eqs.is_empty() || ctx.expired() {
            continue;
        }
        let mut candidates = sub.eq_list();
        candidates.extend(strategy_candidates(cfg, &n, ctx));
        for c in candidates {
            if c.is_zero() || !calc_bds(&cfg.bounds, &c).within_modulus(&n) {
                continue;
            }
            if let Some(m) = add_int_eq(cfg, c.clone(), ctx) {
                changed = true;
                ctx.bump(|s| {
                    s.lift_eq += 1;
                    s.unverified += usize::from(m == Membership::Unknown);
                });
                ctx.log(depth, || {
                    format!("LiftEq n={n} {} |R_inf^=|={}", cfg.render_poly(&c), cfg.int.eqs.len())
                });
            }
        }
    }
    changed
}

/// LowerEq and LowerDiseq for every modulus.
pub fn lower(cfg: &mut Configuration, ctx: &RuleContext, depth: usize) -> bool {
    let mut changed = false;
    let moduli: Vec<BigInt> = cfg.moduli().cloned().collect();
    let int = cfg.int.clone();
    for n in moduli {
        let ring = RingSpec::modular(&n);
        for e in &int.eqs {
            let p = e.simp(&n);
            let sub = &cfg.modular[&n];
            if p.is_zero() || sub.eqs.contains(&p) {
                continue;
            }
            let m = ctx.member(&p, &sub.eq_list(), &ring);
            if m.is_yes() {
                continue;
            }
            cfg.ensure_modulus(&n).eqs.insert(p.clone());
            changed = true;
            ctx.bump(|s| {
                s.lower_eq += 1;
                s.unverified += usize::from(m == Membership::Unknown);
            });
            ctx.log(depth, || format!("LowerEq n={n} {}", cfg.render_poly(&p)));
        }
        for d in &int.diseqs {
            if !calc_bds(&cfg.bounds, d).within_modulus(&n) {
                continue;
            }
            let p = d.simp(&n);
            if cfg.ensure_modulus(&n).diseqs.insert(p.clone()) {
                changed = true;
                ctx.bump(|s| s.lower_diseq += 1);
                ctx.log(depth, || format!("LowerDiseq n={n} {}", cfg.render_poly(&p)));
            }
        }
    }
    changed
}

const CONSTR_ROUNDS: usize = 64;

/// `x_v` occurs in `e` only as the linear monomial; returns its coefficient.
fn linear_only(e: &Polynomial, v: VarId) -> Option<BigInt> {
    let lin = Monomial::var(v);
    let mut coeff = None;
    for (m, c) in e.terms() {
        if *m == lin {
            coeff = Some(c.clone());
        } else if m.exponent(v) > 0 {
            return None;
        }
    }
    coeff
}

/// ConstrBds (to a fixpoint, capped) followed by InfEq.
pub fn constrain_bounds(cfg: &mut Configuration, ctx: &RuleContext, depth: usize) -> bool {
    let mut changed = false;
    let mut search: Vec<Polynomial> = cfg.int.eq_list();
    if !search.is_empty() {
        let gb = ctx.gb(&search, &RingSpec::integers(), &MonomialOrder::GrevLex);
        for g in &gb.generators {
            if !search.contains(g) {
                search.push(g.clone());
            }
        }
    }
    for _ in 0..CONSTR_ROUNDS {
        let mut round = false;
        for e in &search {
            for v in e.vars() {
                let Some(a) = linear_only(e, v) else {
                    continue;
                };
                let rest = e - &Polynomial::term(a.clone(), Monomial::var(v));
                let iv = calc_bds(&cfg.bounds, &(-&rest)).div_round_inward(&a);
                let before = cfg.bounds.get(v);
                if cfg.bounds.tighten(v, &iv) {
                    round = true;
                    ctx.bump(|s| s.constr_bds += 1);
                    ctx.log(depth, || {
                        format!(
                            "ConstrBds {} {} -> {} via {}",
                            cfg.names()[v as usize],
                            before,
                            cfg.bounds.get(v),
                            cfg.render_poly(e)
                        )
                    });
                }
                if cfg.bounds.get(v).is_empty() {
                    return true;
                }
            }
        }
        changed |= round;
        if !round {
            break;
        }
    }
    for v in 0..cfg.num_vars() as VarId {
        let iv = cfg.bounds.get(v);
        let Some(c) = point(&iv) else {
            continue;
        };
        let p = &Polynomial::var(v) - &Polynomial::constant(c);
        if let Some(m) = add_int_eq(cfg, p.clone(), ctx) {
            changed = true;
            ctx.bump(|s| {
                s.inf_eq += 1;
                s.unverified += usize::from(m == Membership::Unknown);
            });
            ctx.log(depth, || format!("InfEq {}", cfg.render_poly(&p)));
        }
    }
    changed
}

fn point(iv: &Interval) -> Option<BigInt> {
    match (iv.lo.as_finite(), iv.hi.as_finite()) {
        (Some(a), Some(b)) if a == b => Some(a.clone()),
        _ => None,
    }
}
