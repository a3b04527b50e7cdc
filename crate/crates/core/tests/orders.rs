mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;
use multimod::lift_gb::weighted_order;
use multimod::poly::{Monomial, MonomialOrder, WeightedOrder};

fn exps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, 3)
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::GrevLex),
        prop::collection::vec(prop::option::weighted(0.8, 1u64..500), 3).prop_map(|b| {
            MonomialOrder::Weighted(Arc::new(WeightedOrder::new(
                b.into_iter().map(|m| m.map(BigUint::from)).collect(),
            )))
        }),
    ]
}

proptest! {
    #[test]
    fn monomial_order_axioms(ord in orders(), a in exps(), b in exps(), c in exps()) {
        let (a, b, c) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b), Monomial::from_exponents(&c));
        let ab = ord.compare(&a, &b);
        prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_ne!(ord.compare(&Monomial::one(), &a), Ordering::Greater);
        prop_assert_eq!(ab, ord.compare(&a.mul(&c), &b.mul(&c)));
        if ab != Ordering::Greater && ord.compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(ord.compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn smaller_means_smaller_magnitude(bases in prop::collection::vec(1u64..500, 3), a in exps(), b in exps()) {
        let w = WeightedOrder::new(bases.into_iter().map(|m| Some(BigUint::from(m))).collect());
        let (a, b) = (Monomial::from_exponents(&a), Monomial::from_exponents(&b));
        if w.compare(&a, &b) == Ordering::Less {
            prop_assert!(w.magnitude(&a) <= w.magnitude(&b));
        }
    }
}

#[test]
fn unbounded_variables_dominate() {
    let w = WeightedOrder::new(vec![Some(BigUint::from(1000u32)), None]);
    let big = Monomial::var_pow(0, 5);
    let y = Monomial::var(1);
    assert_eq!(w.compare(&big, &y), Ordering::Less);
}

#[test]
fn bounds_drive_the_order() {
    // x in [0, 100], y in [-3, 2]: x outranks y^3 but not y^5
    let b = bounds_map(&[(0, 100), (-3, 2)]);
    let ord = weighted_order(&b, 2);
    assert_eq!(ord.compare(&Monomial::var(0), &Monomial::var_pow(1, 3)), Ordering::Greater);
    assert_eq!(ord.compare(&Monomial::var(0), &Monomial::var_pow(1, 5)), Ordering::Less);
}
