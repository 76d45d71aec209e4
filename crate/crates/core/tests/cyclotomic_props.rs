use nsct_core::cyclotomic::{cyclotomic_polynomial, euler_phi, format_cyc, parse_cyc, CycNum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Sums of up to five rational multiples of powers of `ζ_m`.
fn arb_cyc_in(m: u32) -> impl Strategy<Value = CycNum> {
    proptest::collection::vec((arb_rational(), 0..m as i64), 0..=5).prop_map(move |terms| {
        terms.into_iter().fold(CycNum::zero(m), |acc, (q, k)| {
            acc + CycNum::root_of_unity(m, k).scale(&q)
        })
    })
}

fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    (1u32..=60).prop_flat_map(|m| (arb_cyc_in(m), arb_cyc_in(m), arb_cyc_in(m)))
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_reduced((a, _, _) in arb_triple()) {
        let m = a.conductor();
        prop_assert!(a.coeffs().len() <= euler_phi(m) as usize);
        let again = CycNum::from_poly(m, a.coeffs().to_vec());
        prop_assert_eq!(again.coeffs(), a.coeffs());
    }

    #[test]
    fn galois_is_an_automorphism((a, b, _) in arb_triple(), r in -61i64..61) {
        let m = a.conductor();
        prop_assume!(r.gcd(&i64::from(m)) == 1);
        let s = |x: &CycNum| x.galois_power(r).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn parse_format_round_trip((a, _, _) in arb_triple()) {
        let text = format_cyc(&a);
        let back = parse_cyc(&text).unwrap();
        prop_assert_eq!(&back, &a);
        if !a.is_rational() {
            prop_assert_eq!(back.conductor(), a.conductor());
            prop_assert_eq!(back.coeffs(), a.coeffs());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverses((a, _, _) in arb_triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.try_inv().unwrap();
        prop_assert!((&a * &inv).is_one());
    }
}

#[test]
fn vanishing_sums() {
    for m in 2..=60u32 {
        let s = (0..m as i64).fold(CycNum::zero(m), |acc, k| acc + CycNum::root_of_unity(m, k));
        assert!(s.is_zero(), "sum of {m}-th roots");
    }
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
    assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
    assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
    for m in 1..=60 {
        assert_eq!(cyclotomic_polynomial(m).len() - 1, euler_phi(m) as usize);
    }
}

#[test]
fn documented_values() {
    assert!(CycNum::root_of_unity(1, 0).is_one());
    assert_eq!(
        CycNum::root_of_unity(3, 1) + CycNum::root_of_unity(3, 2),
        CycNum::from_int(-1)
    );
    assert_eq!(CycNum::root_of_unity(4, 2), CycNum::from_int(-1));
    let z3 = CycNum::root_of_unity(3, 1);
    assert!((&z3 * &CycNum::root_of_unity(3, 2)).is_one());
    assert_eq!(z3.galois_power(2).unwrap(), parse_cyc("-1-E(3)").unwrap());
    assert!(z3.galois_power(3).is_err());
    assert!(!z3.is_rational());
    let v = &z3 + &CycNum::root_of_unity(3, 2) + CycNum::from_int(5);
    assert_eq!(
        v.as_rational().unwrap(),
        BigRational::from_integer(4.into())
    );
    assert!(z3.as_rational().is_err());
    let q = CycNum::from_rational(BigRational::new(3.into(), 7.into()));
    assert_eq!(q.galois_power(5).unwrap(), q);
}
