//! Searching integer combinations of modular equalities that fit the
//! modulus, exactly and on log-scaled constants.

use std::time::Duration;

use multimod::intervals::{BoundsMap, Interval};
use multimod::lift_ilp::{build_phi, ilp_lift_candidates, solve_feasibility, IlpOptions};
use multimod::poly::Polynomial;
use num_bigint::BigInt;

fn main() {
    let names: Vec<String> = ["x", "y", "z", "w"].map(String::from).to_vec();
    let v = Polynomial::var;
    let eqs = vec![&(&v(0) + &v(2)) + &v(3), &(&v(1) + &v(2)) + &v(3)];
    let b = BoundsMap::from_intervals(vec![Interval::finite(0, 3); 4]);
    let n = BigInt::from(7);
    let sys = build_phi(&eqs, &b, &n).unwrap();
    println!("monomials: {}", sys.monomials.iter().map(|m| m.render(&names)).collect::<Vec<_>>().join(", "));
    for scale in [false, true] {
        let opts = IlpOptions {
            budget: Duration::from_secs(5),
            scale,
        };
        println!("scale={scale}: first solution {:?}", solve_feasibility(&sys, &opts));
        let rep = ilp_lift_candidates(&eqs, &b, &n, &opts).unwrap();
        for p in &rep.lifted {
            println!("  lifted {}", p.render(&names));
        }
        println!("  stopped with {:?}", rep.last);
    }
}
