use fockcat_core::heisenberg::{normal_order, normal_order_random, Generator, HExpr, Word};
use fockcat_core::parse::parse_expression;
use fockcat_core::series::{rat, LaurentPoly, QSeries, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn laurent(lo: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((lo..=3i64, -5i64..=5), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (2 * e, rat(c)))))
}

fn series(order: u32) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(laurent(0), order as usize)
        .prop_map(move |cs| QSeries::from_terms(cs.into_iter().enumerate().map(|(u, c)| (u as u32, c)), order))
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), 0u32..=4), 1..=max_len).prop_map(|letters| {
        Word::new(letters.into_iter().map(|(is_p, i)| if is_p { Generator::p(i) } else { Generator::q(i) }))
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(-3), b in laurent(-3), c in laurent(-3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a);
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(-3), b in laurent(-3)) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn geometric_inverse(e in 1i64..=5, k in -2i64..=2, order in 1i64..=20) {
        let s = LaurentPoly::t_pow(k);
        let inv = QSeries::geom_inverse(e, &s, order).unwrap();
        let base = &QSeries::one(order as u32) - &QSeries::monomial(e as u32, s, order as u32);
        prop_assert_eq!(&base * &inv, QSeries::one(order as u32));
    }

    #[test]
    fn specialization_is_multiplicative(a in series(6), b in series(6), num in -3i64..=3, den in 1i64..=3) {
        let v = Rational::new(num.into(), den.into());
        let lhs = (&a * &b).specialize_t(&v).unwrap();
        let rhs = &a.specialize_t(&v).unwrap() * &b.specialize_t(&v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_forms_are_strategy_independent(w in word(6), seed in any::<u64>()) {
        let expr = HExpr::term(w, LaurentPoly::one());
        let reference = normal_order(&expr);
        let (nf, stats) = normal_order_random(&expr, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(stats.non_decreasing_steps, 0);
        prop_assert!(reference.is_normal());
        prop_assert_eq!(nf, reference);
    }

    #[test]
    fn normal_order_is_a_ring_map(a in word(3), b in word(3)) {
        let (ea, eb) = (HExpr::term(a, LaurentPoly::one()), HExpr::term(b, LaurentPoly::one()));
        prop_assert_eq!(normal_order(&(&ea * &eb)), normal_order(&(&normal_order(&ea) * &normal_order(&eb))));
    }

    #[test]
    fn parse_print_parse(w in word(6), c in laurent(-2), d in laurent(-2)) {
        let expr = &HExpr::term(w.clone(), c) + &HExpr::term(Word::new(w.letters().iter().rev().copied()), d);
        let once = parse_expression(&expr.to_string()).unwrap();
        prop_assert_eq!(&once, &expr);
        prop_assert_eq!(parse_expression(&once.to_string()).unwrap(), once);
    }
}
