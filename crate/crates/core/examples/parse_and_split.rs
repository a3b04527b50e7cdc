//! Parse an SMT-LIB instance and show the configuration it splits into:
//! bounds, the integer subsystem and one subsystem per modulus.

use multimod::frontend::{parse, split};

const TEXT: &str = "
(declare-const x Int)
(declare-const y Int)
(assert (and (>= x 0) (< x 16) (>= y 0) (<= y 4)))
(assert (= (mod (- (* x y) 1) 7) 0))
(assert (distinct (+ x y) 9))
(assert (not (= (mod x 2) 1)))
";

fn main() {
    let inst = parse(TEXT).unwrap();
    for lit in inst.literals() {
        println!("literal   {}", lit.render(&inst.names()));
    }
    let cfg = split(&inst);
    println!("\n{cfg}");
}
