//! Lifting under the bound-weighted order versus plain grevlex: the
//! weighted order eliminates the large variable first and exposes a
//! combination small enough to hold over the integers.

use std::time::Duration;

use multimod::intervals::{calc_bds, BoundsMap, Interval};
use multimod::lift_gb::{gb_lift_candidates, weighted_order};
use multimod::poly::{MonomialOrder, Polynomial};
use num_bigint::BigInt;

fn main() {
    // x is declared last, so grevlex ranks it lowest despite its range
    let names: Vec<String> = ["y", "z", "x"].map(String::from).to_vec();
    let b = BoundsMap::from_intervals(vec![
        Interval::finite(0, 9),
        Interval::finite(0, 9),
        Interval::finite(0, 1_000_000),
    ]);
    let n = BigInt::from(101);
    let (y, z, x) = (Polynomial::var(0), Polynomial::var(1), Polynomial::var(2));
    // y - 2x and z - 2x mod 101
    let two = BigInt::from(2);
    let eqs = vec![&y - &x.scale(&two), &z - &x.scale(&two)];
    for (label, ord) in [("weighted", weighted_order(&b, 3)), ("grevlex", MonomialOrder::GrevLex)] {
        let r = gb_lift_candidates(&eqs, &b, &n, &ord, Duration::from_secs(5));
        println!("{label}:");
        for c in &r.candidates {
            let fits = calc_bds(&b, c).within_modulus(&n);
            println!("  {:<24} bounds {:<16} {}", c.render(&names), calc_bds(&b, c).to_string(), if fits { "lifts" } else { "" });
        }
    }
}
