use locus_core::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (1i64..200, 1i64..50, 0u32..6, 1u64..60).prop_map(|(num, den, k, s)| {
        ExactScalar::new(BigRational::new(BigInt::from(num), BigInt::from(den)), k, s)
    })
}

proptest! {
    #[test]
    fn multiplication_commutes(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in scalar()) {
        let prod = a.mul(&b);
        if prod.pi_pow() >= b.pi_pow() {
            prop_assert_eq!(prod.checked_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn radicand_is_squarefree(a in scalar(), b in scalar()) {
        let s: u64 = a.mul(&b).radicand().try_into().unwrap();
        for p in 2..=s.min(100) {
            prop_assert!(!s.is_multiple_of(p * p));
        }
    }

    #[test]
    fn float_and_log_agree(a in scalar(), b in scalar()) {
        let p = a.mul(&b);
        let direct = a.to_f64() * b.to_f64();
        prop_assert!((p.to_f64() - direct).abs() <= 1e-12 * direct);
        prop_assert!((p.ln().unwrap() - (a.ln().unwrap() + b.ln().unwrap())).abs() < 1e-10);
    }

    #[test]
    fn serde_round_trip(a in scalar()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: ExactScalar = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn power_is_repeated_product(a in scalar(), k in 0u32..5) {
        let mut acc = ExactScalar::one();
        for _ in 0..k {
            acc = acc.mul(&a);
        }
        prop_assert_eq!(a.pow(k), acc);
    }
}

#[test]
fn sqrt_products_collapse() {
    assert_eq!(
        ExactScalar::sqrt(2).mul(&ExactScalar::sqrt(2)),
        ExactScalar::integer(2)
    );
    assert_eq!(
        ExactScalar::sqrt(12),
        ExactScalar::integer(2).mul(&ExactScalar::sqrt(3))
    );
    assert!(ExactScalar::pi_power(1)
        .checked_div(&ExactScalar::pi_power(2))
        .is_err());
    assert!(ExactScalar::one()
        .checked_div(&ExactScalar::zero())
        .is_err());
}
