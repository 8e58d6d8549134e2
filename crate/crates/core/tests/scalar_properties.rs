use eigenspace_core::parse::{parse_poly, parse_scalar};
use eigenspace_core::{Cyclotomic, Poly, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDERS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn scalar() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(ORDERS.to_vec()),
        prop::collection::vec((-9i64..10, 1i64..6), 1..5),
    )
        .prop_map(|(m, coeffs)| {
            coeffs.iter().enumerate().fold(Cyclotomic::zero(), |acc, (k, &(a, b))| {
                let z = Cyclotomic::root_of_unity(m, k as i64).unwrap();
                acc.add(&z.scale(&Rational::new(BigInt::from(a), BigInt::from(b))))
            })
        })
}

fn poly2() -> impl Strategy<Value = Poly> {
    prop::collection::vec((scalar(), 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(2), |acc, (c, a, b)| {
            acc.add(&Poly::var(2, 0).pow(a).mul(&Poly::var(2, 1).pow(b)).scale(&c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverses(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!(a.mul(&a.conj()).is_real());
        prop_assert!(a.add(&a.conj()).is_real());
        prop_assert!(a.sub(&a.conj()).is_imaginary());
    }

    #[test]
    fn display_round_trips(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn poly_display_round_trips(p in poly2()) {
        prop_assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly2(), q in poly2(), x in scalar(), y in scalar()) {
        let pt = [x, y];
        prop_assert_eq!(p.mul(&q).evaluate(&pt), p.evaluate(&pt).mul(&q.evaluate(&pt)));
        prop_assert_eq!(p.add(&q).evaluate(&pt), p.evaluate(&pt).add(&q.evaluate(&pt)));
    }
}

#[test]
fn mixed_orders_promote() {
    let a = Cyclotomic::root_of_unity(3, 1).unwrap();
    let b = Cyclotomic::i();
    let prod = a.mul(&b);
    assert_eq!(prod.order(), 12);
    assert_eq!(prod, Cyclotomic::root_of_unity(12, 7).unwrap());
}

#[test]
fn sums_of_roots_vanish() {
    for m in [2u32, 3, 5, 6, 7, 9, 12, 15] {
        let total = (0..m as i64).fold(Cyclotomic::zero(), |acc, k| {
            acc.add(&Cyclotomic::root_of_unity(m, k).unwrap())
        });
        assert!(total.is_zero(), "m = {m}");
    }
}
