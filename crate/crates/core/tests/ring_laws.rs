//! Property tests: trig polynomials form a commutative ring over the
//! radical field, scaling is linear, and rational-expression equality
//! behaves like genuine fraction equality.

use gasing_core::exactnum::ExactReal;
use gasing_core::trigexpr::{AngleSymbol, Assignment, TrigPoly, TrigRational, Var};
use proptest::prelude::*;

fn small_const() -> impl Strategy<Value = ExactReal> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ExactReal::from_ratio(p, q))
}

fn variable() -> impl Strategy<Value = Var> {
    prop_oneof![
        Just(Var::Cos(AngleSymbol::new("a"))),
        Just(Var::Sin(AngleSymbol::new("a"))),
        Just(Var::Cos(AngleSymbol::new("b"))),
        Just(Var::Sin(AngleSymbol::new("b"))),
        Just(Var::Len("u".to_string())),
    ]
}

fn monomial() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((variable(), 1u32..=2), 0..=2).prop_map(|vs| {
        vs.into_iter().fold(TrigPoly::one(), |acc, (v, e)| {
            &acc * &TrigPoly::var(v).pow(e)
        })
    })
}

/// Up to three terms, each a small constant times a small monomial.
fn trig_poly() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((small_const(), monomial()), 0..=3).prop_map(|ts| {
        ts.into_iter()
            .fold(TrigPoly::zero(), |acc, (c, m)| &acc + &m.scale(&c))
    })
}

fn nonzero_poly() -> impl Strategy<Value = TrigPoly> {
    trig_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// A random binding for every symbol the strategies can mention.
fn assignment() -> impl Strategy<Value = Assignment> {
    (0.1f64..1.4, 0.1f64..1.4, 0.5f64..3.0).prop_map(|(a, b, u)| {
        let mut asg = Assignment::new();
        asg.angles.insert("a".to_string(), a);
        asg.angles.insert("b".to_string(), b);
        asg.lengths.insert("u".to_string(), u);
        asg
    })
}

proptest! {
    #[test]
    fn addition_commutes(p in trig_poly(), q in trig_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
    }

    #[test]
    fn addition_associates(p in trig_poly(), q in trig_poly(), r in trig_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    }

    #[test]
    fn multiplication_commutes(p in trig_poly(), q in trig_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn multiplication_associates(p in trig_poly(), q in trig_poly(), r in trig_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn multiplication_distributes(p in trig_poly(), q in trig_poly(), r in trig_poly()) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn identities_act_trivially(p in trig_poly()) {
        prop_assert_eq!(&p + &TrigPoly::zero(), p.clone());
        prop_assert_eq!(&p * &TrigPoly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn scaling_is_multiplication_by_a_constant(p in trig_poly(), c in small_const()) {
        prop_assert_eq!(p.scale(&c), &p * &TrigPoly::constant(c.clone()));
    }

    #[test]
    fn scaling_composes(p in trig_poly(), c in small_const(), d in small_const()) {
        prop_assert_eq!(p.scale(&c).scale(&d), p.scale(&(&c * &d)));
        prop_assert_eq!(p.scale(&ExactReal::one()), p.clone());
    }

    #[test]
    fn scaling_preserves_ratios_numerically(
        p in nonzero_poly(),
        c in small_const(),
        asg in assignment(),
    ) {
        // A scaled figure keeps every proportion: eval is linear in the scale.
        let before = p.eval(&asg).unwrap();
        let after = p.scale(&c).eval(&asg).unwrap();
        let bound = 1e-9 * (1.0 + before.abs()) * (1.0 + c.to_float().abs());
        prop_assert!((after - c.to_float() * before).abs() <= bound);
    }

    #[test]
    fn identity_substitution_changes_nothing(p in trig_poly()) {
        prop_assert_eq!(p.substitute(|_| None), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        p in trig_poly(),
        q in trig_poly(),
        asg in assignment(),
    ) {
        let (ep, eq) = (p.eval(&asg).unwrap(), q.eval(&asg).unwrap());
        let sum = (&p + &q).eval(&asg).unwrap();
        prop_assert!((sum - (ep + eq)).abs() <= 1e-8 * (1.0 + ep.abs() + eq.abs()));
        let prod = (&p * &q).eval(&asg).unwrap();
        prop_assert!((prod - ep * eq).abs() <= 1e-8 * (1.0 + (ep * eq).abs()));
    }

    #[test]
    fn fraction_equality_ignores_common_factors(
        p in trig_poly(),
        q in nonzero_poly(),
        r in nonzero_poly(),
    ) {
        let plain = TrigRational::new(p.clone(), q.clone());
        let inflated = TrigRational::new(&p * &r, &q * &r);
        prop_assert!(plain.expr_equals(&inflated));
    }

    #[test]
    fn fraction_addition_agrees_with_cross_multiplication(
        p in trig_poly(),
        q in nonzero_poly(),
        r in trig_poly(),
        s in nonzero_poly(),
    ) {
        let lhs = &TrigRational::new(p.clone(), q.clone()) + &TrigRational::new(r.clone(), s.clone());
        let rhs = TrigRational::new(&(&p * &s) + &(&r * &q), &q * &s);
        prop_assert!(lhs.expr_equals(&rhs));
    }

    #[test]
    fn reciprocal_of_reciprocal_is_identity(p in nonzero_poly(), q in nonzero_poly()) {
        let x = TrigRational::new(p, q);
        let back = x.recip().unwrap().recip().unwrap();
        prop_assert!(back.expr_equals(&x));
    }
}
