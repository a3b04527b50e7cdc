use num_bigint::BigInt;
use num_traits::One;

use super::expr::{Literal, ProblemInstance, Relation};
use crate::calculus::Configuration;
use crate::intervals::{Ext, Interval};
use crate::poly::to_poly;

/// Encodes a literal set as a configuration: modular (dis)equalities land
/// `simp_n`-normalized in their subsystem, integer ones in the `∞`
/// subsystem, bounds tighten `B`. One subsystem exists per integer constant
/// greater than one. Zero polynomials are dropped from equality sets.
pub fn split(inst: &ProblemInstance) -> Configuration {
    let mut c = Configuration::new(inst.names());
    for n in inst.moduli() {
        c.ensure_modulus(n);
    }
    for lit in inst.literals() {
        match lit {
            Literal::Bound {
                var,
                rel,
                value,
                negated,
            } => {
                let iv = match (rel, negated) {
                    (Relation::Ge, false) => Interval::new(Ext::Fin(value.clone()), Ext::PosInf),
                    (Relation::Le, false) => Interval::new(Ext::NegInf, Ext::Fin(value.clone())),
                    (Relation::Ge, true) => {
                        Interval::new(Ext::NegInf, Ext::Fin(value - BigInt::one()))
                    }
                    (Relation::Le, true) => {
                        Interval::new(Ext::Fin(value + BigInt::one()), Ext::PosInf)
                    }
                };
                c.bounds.tighten(*var, &iv);
            }
            Literal::IntEq { expr, negated } => {
                let p = to_poly(expr);
                if *negated {
                    c.int.diseqs.insert(p);
                } else if !p.is_zero() {
                    c.int.eqs.insert(p);
                }
            }
            Literal::ModEq {
                expr,
                modulus,
                negated,
            } => {
                let p = to_poly(expr).simp(modulus);
                let sub = c.ensure_modulus(modulus);
                if *negated {
                    sub.diseqs.insert(p);
                } else if !p.is_zero() {
                    sub.eqs.insert(p);
                }
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse;
    use crate::poly::Polynomial;

    #[test]
    fn moduli_from_all_constants() {
        let inst = parse("(declare-const x Int)(assert (= (mod (* 2 x) 3) 0))(assert (< x 5))")
            .unwrap();
        let c = split(&inst);
        let ms: Vec<BigInt> = c.moduli().cloned().collect();
        assert_eq!(ms, vec![2.into(), 3.into(), 5.into()]);
        assert_eq!(c.bounds.get(0), Interval::new(Ext::NegInf, Ext::fin(4)));
        let eqs = &c.modular[&BigInt::from(3)].eqs;
        assert!(eqs.contains(&Polynomial::var(0).scale(&BigInt::from(-1))));
    }

    #[test]
    fn negated_bounds_shift() {
        let inst = parse("(declare-const x Int)(assert (not (>= x 4)))").unwrap();
        assert_eq!(split(&inst).bounds.get(0), Interval::new(Ext::NegInf, Ext::fin(3)));
        let inst = parse("(declare-const x Int)(assert (not (<= x 4)))").unwrap();
        assert_eq!(split(&inst).bounds.get(0), Interval::new(Ext::fin(5), Ext::PosInf));
    }

    #[test]
    fn integer_equalities_stay_unlowered() {
        let inst = parse("var x y\nx - 6*y = 0\nx % 6 != 0").unwrap();
        let c = split(&inst);
        let p = &Polynomial::var(0) - &Polynomial::var(1).scale(&BigInt::from(6));
        assert!(c.int.eqs.contains(&p));
        assert!(c.modular[&BigInt::from(6)].eqs.is_empty());
    }
}
