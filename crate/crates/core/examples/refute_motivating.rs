//! Refute the motivating instance for a pair of primes and print the
//! derivation.
//!
//! cargo run --example refute_motivating -- 97 18839

use multimod::benchgen::motivating;
use multimod::calculus::refute_instance;
use multimod::frontend::to_native;
use multimod::settings::SolverSettings;
use num_bigint::BigInt;

fn main() {
    let args: Vec<BigInt> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, q) = match args.as_slice() {
        [p, q] => (p.clone(), q.clone()),
        _ => (BigInt::from(3), BigInt::from(19)),
    };
    let inst = motivating(&p, &q, false).expect("p and q must be primes with q > p");
    print!("{}", to_native(&inst));
    let settings = SolverSettings {
        trace: true,
        ..SolverSettings::default()
    };
    let r = refute_instance(&inst, &settings);
    println!("\n{}", r.verdict);
    for line in &r.trace {
        println!("{line}");
    }
    println!("{} nodes in {:?}", r.stats.nodes, r.elapsed);
}
