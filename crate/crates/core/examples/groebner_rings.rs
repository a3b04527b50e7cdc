//! The same generators over Z, a field and a ring with zero divisors.

use std::time::Duration;

use multimod::groebner::{groebner_basis, RingSpec};
use multimod::poly::{MonomialOrder, Polynomial};
use num_bigint::BigInt;

fn main() {
    let names: Vec<String> = vec!["x".into(), "y".into()];
    let (x, y) = (Polynomial::var(0), Polynomial::var(1));
    // 3xy - 2, 2x^2 + y
    let f = &(&x * &y).scale(&BigInt::from(3)) - &Polynomial::constant(2);
    let g = &x.pow(2).scale(&BigInt::from(2)) + &y;
    for ring in [
        RingSpec::integers(),
        RingSpec::modular(&BigInt::from(7)),
        RingSpec::modular(&BigInt::from(12)),
    ] {
        let gb = groebner_basis(&[f.clone(), g.clone()], &ring, &MonomialOrder::GrevLex, Duration::from_secs(5));
        println!("{ring}: complete={}", gb.complete);
        for p in &gb.generators {
            println!("  {}", p.render(&names));
        }
        println!("  contains 1: {:?}", gb.contains_one());
    }
}
