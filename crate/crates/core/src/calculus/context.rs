use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::groebner::{groebner_basis_memo, GroebnerBasis, Membership, RingSpec};
use crate::intervals::BoundsMap;
use crate::poly::{MonomialOrder, Polynomial};
use crate::settings::SolverSettings;

/// Counters of one refutation run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub max_depth: usize,
    pub lift_eq: usize,
    pub lift_diseq: usize,
    pub lower_eq: usize,
    pub lower_diseq: usize,
    pub constr_bds: usize,
    pub inf_eq: usize,
    pub zero_or_one: usize,
    pub rng_lift: usize,
    pub gb_calls: usize,
    pub gb_cache_hits: usize,
    pub gb_incomplete: usize,
    pub ilp_calls: usize,
    pub ilp_found: usize,
    /// Rule applications after which the progress measure did not move.
    pub measure_violations: usize,
    /// Rule applications that rest on an undecided membership query.
    pub unverified: usize,
}

impl Stats {
    pub fn render(&self) -> Vec<String> {
        let f = |k: &str, v: usize| format!("{k}: {v}");
        vec![
            f("nodes", self.nodes),
            f("max-depth", self.max_depth),
            f("lift-eq", self.lift_eq),
            f("lift-diseq", self.lift_diseq),
            f("lower-eq", self.lower_eq),
            f("lower-diseq", self.lower_diseq),
            f("constr-bds", self.constr_bds),
            f("inf-eq", self.inf_eq),
            f("zero-or-one", self.zero_or_one),
            f("rng-lift", self.rng_lift),
            f("gb-calls", self.gb_calls),
            f("gb-cache-hits", self.gb_cache_hits),
            f("gb-incomplete", self.gb_incomplete),
            f("ilp-calls", self.ilp_calls),
            f("ilp-found", self.ilp_found),
            f("measure-violations", self.measure_violations),
            f("unverified", self.unverified),
        ]
    }
}

type IlpKey = (BigInt, Vec<Polynomial>, BoundsMap);

/// Shared state of a refutation: settings, deadline, counters, trace.
pub struct RuleContext {
    pub settings: SolverSettings,
    pub deadline: Instant,
    pub(crate) nodes: AtomicUsize,
    stats: Mutex<Stats>,
    trace: Mutex<Vec<String>>,
    pub(crate) ilp_memo: Mutex<HashMap<IlpKey, Vec<Polynomial>>>,
}

impl RuleContext {
    pub fn new(settings: &SolverSettings) -> Self {
        RuleContext {
            deadline: Instant::now() + settings.timeout,
            settings: settings.clone(),
            nodes: AtomicUsize::new(0),
            stats: Mutex::new(Stats::default()),
            trace: Mutex::new(Vec::new()),
            ilp_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn expired(&self) -> bool {
        Instant::now() >= self.deadline
    }

    fn remaining(&self, cap: Duration) -> Duration {
        self.deadline
            .saturating_duration_since(Instant::now())
            .min(cap)
            .max(Duration::from_millis(1))
    }

    pub fn gb_budget(&self) -> Duration {
        self.remaining(self.settings.gb_budget)
    }

    pub fn ilp_budget(&self) -> Duration {
        self.remaining(self.settings.ilp_budget)
    }

    pub fn bump(&self, f: impl FnOnce(&mut Stats)) {
        f(&mut self.stats.lock().unwrap());
    }

    pub fn stats(&self) -> Stats {
        let mut s = self.stats.lock().unwrap().clone();
        s.nodes = self.nodes.load(Ordering::Relaxed);
        s
    }

    pub fn log(&self, depth: usize, line: impl FnOnce() -> String) {
        if self.settings.trace {
            let l = format!("{}[{depth}] {}", "  ".repeat(depth), line());
            self.trace.lock().unwrap().push(l);
        }
    }

    pub fn take_trace(&self) -> Vec<String> {
        std::mem::take(&mut self.trace.lock().unwrap())
    }

    pub fn gb(&self, eqs: &[Polynomial], ring: &RingSpec, ord: &MonomialOrder) -> Arc<GroebnerBasis> {
        let (gb, cached) = groebner_basis_memo(eqs, ring, ord, self.gb_budget());
        self.bump(|s| {
            s.gb_calls += 1;
            s.gb_cache_hits += usize::from(cached);
            s.gb_incomplete += usize::from(!gb.complete);
        });
        gb
    }

    /// `p ∈ ⟨eqs⟩` over `ring`.
    pub fn member(&self, p: &Polynomial, eqs: &[Polynomial], ring: &RingSpec) -> Membership {
        self.gb(eqs, ring, &MonomialOrder::GrevLex).contains(p)
    }
}
