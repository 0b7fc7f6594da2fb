use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use kummer_lpoly::cyclo::{signed_power, CycInt};
use kummer_lpoly::frobenius::{analyze, CurveParams};
use kummer_lpoly::gf::FieldSpec;
use kummer_lpoly::lfunc::lpoly_from_profile;
use kummer_lpoly::numth::odd_prime_power;

fn cyc(ell: usize) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-50i64..50, ell).prop_map(|v| CycInt::from_slots(&v))
}

fn triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop_oneof![Just(3usize), Just(5), Just(7), Just(11)].prop_flat_map(|l| (cyc(l), cyc(l), cyc(l)))
}

proptest! {
    #[test]
    fn convolution_is_a_commutative_ring((x, y, z) in triple()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let one = CycInt::constant(x.ell(), 1);
        prop_assert_eq!(x.mul(&one), x.clone());
        prop_assert!(x.mul(&x.neg()).neg() == x.mul(&x));
    }

    #[test]
    fn all_ones_is_zero((x, y, _) in triple(), c in -20i64..20) {
        let shifted = x.shifted(&BigInt::from(c));
        prop_assert_eq!(&shifted, &x);
        prop_assert_eq!(shifted.mul(&y), x.mul(&y));
        prop_assert_eq!(x.normalized(), x.clone());
        prop_assert!(CycInt::constant(x.ell(), 0).shifted(&BigInt::from(c)).is_zero_value());
    }

    #[test]
    fn galois_action_is_multiplicative((x, y, _) in triple(), k in 1usize..100) {
        let l = x.ell();
        prop_assume!(k % l != 0);
        prop_assert_eq!(x.mul(&y).galois(k), x.galois(k).mul(&y.galois(k)));
        prop_assert_eq!(x.galois(l - 1), x.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn signed_power_splits((x, _, _) in triple(), r in 1u64..5, s in 1u64..5) {
        // (-1)^(r+s-1) x^(r+s) = -((-1)^(r-1) x^r)((-1)^(s-1) x^s)
        let lhs = signed_power(&x, r + s);
        let rhs = signed_power(&x, r).mul(&signed_power(&x, s)).neg();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(lhs.slot(x.ell() - 1) == &BigInt::from(0));
    }

    #[test]
    fn field_axioms(e in 1usize..4, i in 0u64..10_000, j in 0u64..10_000, k in 0u64..10_000) {
        let f = FieldSpec::new(5, e, None).unwrap();
        let n = f.order();
        let (x, y, z) = (f.unpack(i % n), f.unpack(j % n), f.unpack(k % n));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
            let d = f.dlog(&x).unwrap();
            prop_assert_eq!(f.gen_pow(d), x.clone());
            prop_assert_eq!(f.is_square(&x).unwrap(), d % 2 == 0);
        }
    }

    #[test]
    fn lpolys_satisfy_the_functional_equation(
        (ell, q) in prop_oneof![Just((3u64, 7u64)), Just((5, 11)), Just((7, 29)), Just((5, 9)), Just((7, 11)), Just((13, 27))],
        i in 0u64..1000,
        j in 0u64..1000,
    ) {
        let (p, e) = odd_prime_power(q).unwrap();
        let base = FieldSpec::new(p, e, None).unwrap();
        let curve = CurveParams::new(ell, base.clone(), base.unpack(i % q), base.unpack(j % q)).unwrap();
        prop_assume!(curve.genus > 0);
        let p = analyze(&curve, None).unwrap();
        let l = lpoly_from_profile(&p, &curve).unwrap();
        prop_assert!(l.satisfies_functional_equation());
        prop_assert_eq!(l.eval(&BigInt::one()), l.class_number.clone());
        prop_assert_eq!(l.coeffs.len() as u64, 2 * curve.genus + 1);
        // |a(q)| <= 2 g sqrt(q)
        let a1 = p.trace(1).unwrap();
        prop_assert!(&a1 * &a1 <= BigInt::from(4 * curve.genus * curve.genus * q));
    }
}
