//! Refutation engine for multimodular systems of integer polynomial
//! constraints: equalities and disequalities modulo several constants, over
//! the integers, and variable bounds.
//!
//! The usual pipeline is [`frontend::parse`] → [`calculus::refute`], with
//! [`oracle::brute_force`] as an independent ground truth on bounded inputs
//! and [`benchgen`] producing instances.

pub mod benchgen;
pub mod calculus;
pub mod frontend;
pub mod groebner;
pub mod intervals;
pub mod lift_gb;
pub mod lift_ilp;
pub mod oracle;
pub mod poly;
pub mod settings;
