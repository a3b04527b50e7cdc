//! Ablation over the generated benchmark suite: run each lift strategy on
//! every correct instance and cross-check refutations against the oracle.
//!
//! cargo run --release --example benchmark_suite

use std::time::Duration;

use multimod::benchgen::sweep;
use multimod::calculus::refute_instance;
use multimod::oracle::brute_force;
use multimod::settings::{LiftStrategy, SolverSettings};

fn main() {
    let suite = sweep(&[3, 5, 7, 11, 13], false);
    println!("{} unsat instances", suite.len());
    for strategy in LiftStrategy::ALL {
        let settings = SolverSettings {
            timeout: Duration::from_secs(20),
            ..SolverSettings::with_strategy(strategy)
        };
        let mut solved = 0;
        for b in &suite {
            let r = refute_instance(&b.instance, &settings);
            if r.verdict.is_unsat() {
                solved += 1;
                if let Ok(v) = brute_force(&b.instance) {
                    assert!(!v.is_sat(), "{} refuted but the oracle found a model", b.name);
                }
            }
            println!(
                "  {:<14} {:<40} {:<8} {:>6} ms",
                strategy.name(),
                b.name,
                r.verdict.to_string(),
                r.elapsed.as_millis()
            );
        }
        println!("{:<14} solved {solved}/{}", strategy.name(), suite.len());
    }
}
