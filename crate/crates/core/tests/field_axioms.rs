//! Property tests: the radical numbers form an ordered field.
//!
//! Values are random Q-linear combinations of square roots of small
//! squarefree integers, so every axiom is exercised across the
//! multi-radical representation, not just on plain rationals.

use gasing_core::exactnum::{rat, ExactReal};
use proptest::prelude::*;

fn radicand() -> impl Strategy<Value = u64> {
    prop_oneof![
        Just(1u64),
        Just(2),
        Just(3),
        Just(5),
        Just(6),
        Just(7),
        Just(10),
    ]
}

/// Up to three radical terms with small rational coefficients.
fn exact_real() -> impl Strategy<Value = ExactReal> {
    let term = (radicand(), -50i64..=50, 1i64..=50)
        .prop_map(|(m, p, q)| &ExactReal::from_ratio(p, q) * &ExactReal::sqrt_int(m));
    prop::collection::vec(term, 0..=3)
        .prop_map(|terms| terms.iter().fold(ExactReal::zero(), |acc, t| &acc + t))
}

fn nonzero() -> impl Strategy<Value = ExactReal> {
    exact_real().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn addition_commutes(x in exact_real(), y in exact_real()) {
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn addition_associates(x in exact_real(), y in exact_real(), z in exact_real()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    }

    #[test]
    fn multiplication_commutes(x in exact_real(), y in exact_real()) {
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn multiplication_associates(x in exact_real(), y in exact_real(), z in exact_real()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn multiplication_distributes(x in exact_real(), y in exact_real(), z in exact_real()) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn identities_act_trivially(x in exact_real()) {
        prop_assert_eq!(&x + &ExactReal::zero(), x.clone());
        prop_assert_eq!(&x * &ExactReal::one(), x.clone());
        prop_assert_eq!(&x * &ExactReal::zero(), ExactReal::zero());
    }

    #[test]
    fn additive_inverse_cancels(x in exact_real()) {
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!(&x - &x, ExactReal::zero());
    }

    #[test]
    fn division_inverts_multiplication(x in exact_real(), y in nonzero()) {
        let back = (&x * &y).checked_div(&y).expect("divisor is nonzero");
        prop_assert_eq!(back, x);
    }

    #[test]
    fn reciprocal_round_trips(y in nonzero()) {
        let inv = ExactReal::one().checked_div(&y).expect("divisor is nonzero");
        prop_assert_eq!(&inv * &y, ExactReal::one());
    }

    #[test]
    fn power_matches_repeated_product(x in exact_real()) {
        prop_assert_eq!(x.pow(0), ExactReal::one());
        prop_assert_eq!(x.pow(1), x.clone());
        prop_assert_eq!(x.pow(3), &(&x * &x) * &x);
    }

    #[test]
    fn square_of_a_rational_has_an_exact_root(p in -50i64..=50, q in 1i64..=50) {
        let x = ExactReal::from_ratio(p, q);
        prop_assert_eq!((&x * &x).sqrt().expect("squares are nonnegative"), x.abs());
    }

    #[test]
    fn square_of_a_radical_term_has_an_exact_root(
        m in radicand(),
        p in 1i64..=50,
        q in 1i64..=50,
    ) {
        let t = &ExactReal::from_ratio(p, q) * &ExactReal::sqrt_int(m);
        prop_assert_eq!((&t * &t).sqrt().expect("squares are nonnegative"), t);
    }

    #[test]
    fn negative_values_have_no_root(x in nonzero()) {
        let neg = -&x.abs();
        prop_assert!(neg.sqrt().is_err());
    }

    #[test]
    fn ordering_is_antisymmetric_and_reflexive(x in exact_real(), y in exact_real()) {
        prop_assert_eq!(x.compare(&x), std::cmp::Ordering::Equal);
        prop_assert_eq!(x.compare(&y), y.compare(&x).reverse());
    }

    #[test]
    fn ordering_never_contradicts_the_float_shadow(x in exact_real(), y in exact_real()) {
        match x.compare(&y) {
            std::cmp::Ordering::Less => prop_assert!(x.to_float() <= y.to_float() + 1e-6),
            std::cmp::Ordering::Greater => prop_assert!(x.to_float() >= y.to_float() - 1e-6),
            std::cmp::Ordering::Equal => prop_assert!((x.to_float() - y.to_float()).abs() <= 1e-6),
        }
    }

    #[test]
    fn ordering_respects_addition(x in exact_real(), y in exact_real(), z in exact_real()) {
        prop_assert_eq!(x.compare(&y), (&x + &z).compare(&(&y + &z)));
    }

    #[test]
    fn float_shadow_is_a_homomorphism(x in exact_real(), y in exact_real()) {
        let scale = 1.0 + x.to_float().abs() + y.to_float().abs();
        prop_assert!(((&x + &y).to_float() - (x.to_float() + y.to_float())).abs() <= 1e-9 * scale);
        let scale = 1.0 + (x.to_float() * y.to_float()).abs();
        prop_assert!(((&x * &y).to_float() - x.to_float() * y.to_float()).abs() <= 1e-9 * scale);
    }
}

#[test]
fn canonical_display_survives_a_parse_by_eye() {
    // A fixed spot check that the canonical form stays stable: the
    // property tests above only see values, not their rendering.
    let x = &ExactReal::from_int(6) + &(&ExactReal::from_int(6) * &ExactReal::sqrt_int(3));
    assert_eq!(x.to_string(), "6 + 6*sqrt(3)");
    let y = ExactReal::sqrt_of(&rat(3, 4)).unwrap();
    assert_eq!(y.to_string(), "sqrt(3)/2");
}
