use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

/// How liftable equalities are searched for in a modular subsystem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LiftStrategy {
    /// Gröbner basis under the bound-weighted order.
    #[default]
    WeightedGb,
    /// Gröbner basis under plain grevlex.
    UnweightedGb,
    /// Integer linear combinations of the subsystem members.
    Ilp,
    /// Weighted Gröbner basis, plus linear combinations whenever the basis
    /// is not known to be complete for lifting.
    GbIlp,
}

impl LiftStrategy {
    pub const ALL: [LiftStrategy; 4] = [
        LiftStrategy::WeightedGb,
        LiftStrategy::UnweightedGb,
        LiftStrategy::Ilp,
        LiftStrategy::GbIlp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LiftStrategy::WeightedGb => "weighted-gb",
            LiftStrategy::UnweightedGb => "unweighted-gb",
            LiftStrategy::Ilp => "ilp",
            LiftStrategy::GbIlp => "gb+ilp",
        }
    }

    pub fn uses_gb(self) -> bool {
        !matches!(self, LiftStrategy::Ilp)
    }
}

impl fmt::Display for LiftStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown lift strategy `{0}` (expected weighted-gb, unweighted-gb, ilp or gb+ilp)")]
pub struct UnknownStrategy(pub String);

impl FromStr for LiftStrategy {
    type Err = UnknownStrategy;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LiftStrategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| UnknownStrategy(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SolverSettings {
    pub lift_strategy: LiftStrategy,
    /// Budget of a single Gröbner basis computation.
    pub gb_budget: Duration,
    /// Budget of a single linear feasibility search.
    pub ilp_budget: Duration,
    /// Scale the linear feasibility constants by signed log2.
    pub ilp_scale: bool,
    pub max_depth: usize,
    /// Total derivation-tree nodes explored before giving up.
    pub max_nodes: usize,
    /// Wall-clock limit of the whole refutation.
    pub timeout: Duration,
    pub trace: bool,
    /// Worker threads for branch children; 1 explores them sequentially.
    pub threads: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            lift_strategy: LiftStrategy::default(),
            gb_budget: Duration::from_secs(30),
            ilp_budget: Duration::from_secs(30),
            ilp_scale: true,
            max_depth: 16,
            max_nodes: 4096,
            timeout: Duration::from_secs(1200),
            trace: false,
            threads: 1,
        }
    }
}

impl SolverSettings {
    pub fn with_strategy(strategy: LiftStrategy) -> Self {
        SolverSettings {
            lift_strategy: strategy,
            ..Default::default()
        }
    }
}
