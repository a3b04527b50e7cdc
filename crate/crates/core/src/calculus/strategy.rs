use std::fmt;
use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::context::{RuleContext, Stats};
use super::measure::Snapshot;
use super::rules::{check_unsat, constrain_bounds, lift, lower, Scope};
use super::{branch, Configuration};
use crate::frontend::{split, ProblemInstance};
use crate::settings::SolverSettings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnknownReason {
    /// No rule applies and nothing was refuted.
    Saturated,
    /// Some branch saturated without a refutation.
    BranchUnknown,
    /// Depth, node or time limit reached.
    ResourceLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Unsat,
    Unknown(UnknownReason),
}

impl Verdict {
    pub fn is_unsat(self) -> bool {
        self == Verdict::Unsat
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unsat => write!(f, "unsat"),
            Verdict::Unknown(_) => write!(f, "unknown"),
        }
    }
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::Saturated => "saturated",
            UnknownReason::BranchUnknown => "branch-unknown",
            UnknownReason::ResourceLimit => "resource-limit",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub verdict: Verdict,
    pub stats: Stats,
    /// One line per rule application; empty unless tracing was requested.
    pub trace: Vec<String>,
    pub elapsed: Duration,
}

/// Runs the calculus on `cfg`: saturate with the non-branching rules,
/// then branch, until every leaf is refuted or a limit is reached.
pub fn refute(cfg: Configuration, settings: &SolverSettings) -> SolverResult {
    let start = Instant::now();
    let ctx = RuleContext::new(settings);
    let verdict = if settings.threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(settings.threads).build() {
            Ok(pool) => pool.install(|| solve_node(cfg, &ctx, 0)),
            Err(_) => solve_node(cfg, &ctx, 0),
        }
    } else {
        solve_node(cfg, &ctx, 0)
    };
    SolverResult {
        verdict,
        stats: ctx.stats(),
        trace: ctx.take_trace(),
        elapsed: start.elapsed(),
    }
}

pub fn refute_instance(inst: &ProblemInstance, settings: &SolverSettings) -> SolverResult {
    refute(split(inst), settings)
}

fn limited(ctx: &RuleContext) -> bool {
    ctx.expired() || ctx.nodes.load(Ordering::Relaxed) > ctx.settings.max_nodes
}

/// Runs `rule` and audits the progress measure when it reports a change.
fn audited(
    cfg: &mut Configuration,
    ctx: &RuleContext,
    rule: impl FnOnce(&mut Configuration) -> bool,
) -> bool {
    let before = Snapshot::take(cfg);
    let changed = rule(cfg);
    if changed && !Snapshot::take(cfg).strictly_below(&before) {
        ctx.bump(|s| s.measure_violations += 1);
        debug_assert!(false, "rule reported progress without moving the measure");
    }
    changed
}

fn refuted(cfg: &Configuration, ctx: &RuleContext, depth: usize, scope: Scope) -> bool {
    match check_unsat(cfg, ctx, scope) {
        Some(r) => {
            ctx.log(depth, || r.render(cfg));
            true
        }
        None => false,
    }
}

/// Applies the non-branching rules to a fixpoint. `Some(verdict)` when the
/// node was decided (refuted or out of resources).
pub fn saturate(cfg: &mut Configuration, ctx: &RuleContext, depth: usize) -> Option<Verdict> {
    if refuted(cfg, ctx, depth, Scope::All) {
        return Some(Verdict::Unsat);
    }
    loop {
        if limited(ctx) {
            return Some(Verdict::Unknown(UnknownReason::ResourceLimit));
        }
        let mut changed = false;
        while audited(cfg, ctx, |c| lift(c, ctx, depth)) {
            changed = true;
            if refuted(cfg, ctx, depth, Scope::Integer) {
                return Some(Verdict::Unsat);
            }
            if limited(ctx) {
                return Some(Verdict::Unknown(UnknownReason::ResourceLimit));
            }
        }
        loop {
            let lowered = audited(cfg, ctx, |c| lower(c, ctx, depth));
            if lowered && refuted(cfg, ctx, depth, Scope::Modular) {
                return Some(Verdict::Unsat);
            }
            let constrained = audited(cfg, ctx, |c| constrain_bounds(c, ctx, depth));
            changed |= lowered || constrained;
            if !(lowered || constrained) {
                break;
            }
            if refuted(cfg, ctx, depth, Scope::All) {
                return Some(Verdict::Unsat);
            }
            if limited(ctx) {
                return Some(Verdict::Unknown(UnknownReason::ResourceLimit));
            }
        }
        if refuted(cfg, ctx, depth, Scope::All) {
            return Some(Verdict::Unsat);
        }
        if !changed {
            return None;
        }
    }
}

fn solve_node(mut cfg: Configuration, ctx: &RuleContext, depth: usize) -> Verdict {
    ctx.nodes.fetch_add(1, Ordering::Relaxed);
    ctx.bump(|s| s.max_depth = s.max_depth.max(depth));
    if let Some(v) = saturate(&mut cfg, ctx, depth) {
        return v;
    }
    if limited(ctx) {
        return Verdict::Unknown(UnknownReason::ResourceLimit);
    }
    let Some(b) = branch::branch(&cfg, ctx) else {
        ctx.log(depth, || "saturated".into());
        return Verdict::Unknown(UnknownReason::Saturated);
    };
    if depth >= ctx.settings.max_depth {
        return Verdict::Unknown(UnknownReason::ResourceLimit);
    }
    ctx.log(depth, || {
        format!(
            "{} n={} on {} ({} children)",
            b.rule,
            b.modulus,
            cfg.render_poly(&b.on),
            b.children.len()
        )
    });
    let combine = |vs: Vec<Verdict>| {
        if vs.iter().all(|v| v.is_unsat()) {
            Verdict::Unsat
        } else if vs.contains(&Verdict::Unknown(UnknownReason::ResourceLimit)) {
            Verdict::Unknown(UnknownReason::ResourceLimit)
        } else {
            Verdict::Unknown(UnknownReason::BranchUnknown)
        }
    };
    if ctx.settings.threads > 1 {
        let vs: Vec<Verdict> = b
            .children
            .into_par_iter()
            .map(|c| solve_node(c, ctx, depth + 1))
            .collect();
        combine(vs)
    } else {
        let mut vs = Vec::new();
        for c in b.children {
            let v = solve_node(c, ctx, depth + 1);
            let stop = !v.is_unsat();
            vs.push(v);
            if stop {
                break;
            }
        }
        combine(vs)
    }
}
