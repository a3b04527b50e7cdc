//! Cross-check the solver against exhaustive search on generated
//! instances, correct and buggy.

use multimod::benchgen::small_suite;
use multimod::calculus::refute_instance;
use multimod::oracle::{brute_force, OracleVerdict};
use multimod::settings::SolverSettings;

fn main() {
    let settings = SolverSettings::default();
    for b in small_suite() {
        let solver = refute_instance(&b.instance, &settings).verdict;
        let oracle = match brute_force(&b.instance) {
            Ok(OracleVerdict::Sat(pt)) => format!("sat {pt:?}"),
            Ok(OracleVerdict::Unsat) => "unsat".into(),
            Err(e) => format!("({e})"),
        };
        println!("{:<36} expected {:<5} solver {:<7} oracle {oracle}", b.name, b.expected(), solver.to_string());
    }
}
