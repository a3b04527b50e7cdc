//! The refutation calculus over configurations `(B, R_∞, {R_n}_n)`.

pub mod branch;
mod config;
mod context;
pub mod measure;
pub mod rules;
mod strategy;

pub use branch::{boolean_form, sqrt_mod, Branching};
pub use config::{Configuration, Modulus, Subsystem};
pub use context::{RuleContext, Stats};
pub use rules::{check_unsat, constrain_bounds, lift, lower, Refutation, Scope};
pub use strategy::{refute, refute_instance, saturate, SolverResult, UnknownReason, Verdict};
