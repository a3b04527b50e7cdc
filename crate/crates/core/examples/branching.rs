//! The two branching rules on small instances: a boolean square over a
//! prime field, and a modular equality whose range straddles the modulus.

use multimod::calculus::refute_instance;
use multimod::frontend::parse;
use multimod::settings::SolverSettings;

fn show(title: &str, text: &str) {
    let inst = parse(text).unwrap();
    let settings = SolverSettings {
        trace: true,
        ..SolverSettings::default()
    };
    let r = refute_instance(&inst, &settings);
    println!("== {title}: {}", r.verdict);
    for line in &r.trace {
        println!("{line}");
    }
    println!(
        "zero-or-one splits: {}, range lifts: {}\n",
        r.stats.zero_or_one, r.stats.rng_lift
    );
}

fn main() {
    show(
        "ZeroOrOne",
        "var b y\nb >= 0\nb <= 4\ny >= 0\ny <= 10\nb*b - b % 5 = 0\ny - 3*b - 1 = 0\ny - 1 % 7 != 0\ny - 4 % 7 != 0",
    );
    show("RngLift", "var x\nx >= 0\nx <= 7\nx % 6 = 0\nx != 0\nx - 6 != 0");
}
