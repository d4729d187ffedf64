//! Randomized invariants for the charted arithmetic, the expression
//! language, the curve geometry, boosts, and wave superposition.

use proptest::prelude::*;

use kochwave::koch::{Address, KochParams};
use kochwave::lorentz::{boost_point, interval, Boost, SpacetimePoint};
use kochwave::wave::{Profile, WaveField, WaveProfile};
use kochwave::{exprlang, quad, Arithmetic};

fn charts() -> Vec<(Arithmetic, std::ops::Range<f64>)> {
    vec![
        (Arithmetic::identity(), -20.0..20.0),
        (Arithmetic::cubic(), -20.0..20.0),
        (Arithmetic::log(), 0.05..20.0),
    ]
}

proptest! {
    #[test]
    fn charted_addition_is_a_commutative_group(seed in 0u64..1u64 << 48) {
        // Derive three in-domain operands per chart from one seed so a
        // single generator covers charts with different domains.
        for (arith, range) in charts() {
            let span = range.end - range.start;
            let pick = |k: u64| {
                let t = ((seed >> (k * 16)) & 0xffff) as f64 / 65535.0;
                range.start + span * t
            };
            let (x, y, z) = (pick(0), pick(1), pick(2));
            let name = arith.chart().name();
            // Commutativity is exact: IEEE addition of the images commutes.
            prop_assert_eq!(
                arith.add(x, y).unwrap(),
                arith.add(y, x).unwrap(),
                "commutativity fails on {}", name
            );
            // Associativity holds to rounding.
            let lhs = arith.add(arith.add(x, y).unwrap(), z).unwrap();
            let rhs = arith.add(x, arith.add(y, z).unwrap()).unwrap();
            prop_assert!(
                (lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0),
                "associativity fails on {name}: {lhs} vs {rhs}"
            );
            // Neutral element and additive inverse.
            let idn = arith.add(x, arith.zero()).unwrap();
            prop_assert!((idn - x).abs() <= 1e-9 * x.abs().max(1.0));
            let cancel = arith.add(x, arith.neg(x).unwrap()).unwrap();
            prop_assert!((cancel - arith.zero()).abs() <= 1e-9 * arith.zero().abs().max(1.0));
            // Subtraction agrees with adding the inverse.
            let a = arith.sub(x, y).unwrap();
            let b = arith.add(x, arith.neg(y).unwrap()).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn chart_round_trips_are_tight(r in -30.0f64..30.0) {
        for (arith, _) in charts() {
            let chart = arith.chart();
            let x = chart.inverse(r).unwrap();
            let back = chart.forward(x).unwrap();
            prop_assert!(
                (back - r).abs() <= 1e-12 * r.abs().max(1.0),
                "round trip drifts on {}: {r} -> {back}", chart.name()
            );
        }
    }

    #[test]
    fn pairwise_summation_matches_sequential_summation(
        values in prop::collection::vec(-1e3f64..1e3, 0..200)
    ) {
        let pairwise = quad::pairwise_sum(&values);
        let sequential: f64 = values.iter().sum();
        let scale: f64 = values.iter().map(|v| v.abs()).sum::<f64>() + 1.0;
        prop_assert!((pairwise - sequential).abs() <= 1e-10 * scale);
    }

    #[test]
    fn formatting_expressions_is_stable(text in expr_text()) {
        let first = exprlang::parse(&text).expect("generated text parses");
        let printed = first.format();
        let second = exprlang::parse(&printed).expect("formatted text parses");
        prop_assert_eq!(&printed, &second.format(), "formatting is not idempotent");
        for x in [-1.5, 0.25, 2.0] {
            match (first.eval(x), second.eval(x)) {
                (Ok(a), Ok(b)) => prop_assert!(
                    a == b || (a.is_nan() && b.is_nan()),
                    "eval changed after formatting {text:?}: {a} vs {b}"
                ),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "error behaviour changed: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn addresses_order_lexicographically(
        cell in -5i64..5,
        pair in (1usize..10).prop_flat_map(|len| (
            prop::collection::vec(0u8..4, len..=len),
            prop::collection::vec(0u8..4, len..=len),
        ))
    ) {
        let (d1, d2) = pair;
        let a = Address::from_digits(cell, d1.clone()).unwrap();
        let b = Address::from_digits(cell, d2.clone()).unwrap();
        let by_digits = d1.cmp(&d2);
        let by_coordinate = a.coordinate().partial_cmp(&b.coordinate()).unwrap();
        prop_assert_eq!(by_digits, by_coordinate,
            "digit order and coordinate order disagree for {:?} vs {:?}", d1, d2);
    }

    #[test]
    fn embedding_error_bound_holds_across_the_family(
        y in -4.0f64..4.0,
        alpha in 0.0f64..std::f64::consts::FRAC_PI_2,
        depth in 1usize..12,
    ) {
        let params = KochParams::new(alpha).unwrap();
        let address = Address::from_coordinate(y).unwrap();
        let (coarse, bound) = params.embed(&address, depth);
        let (fine, _) = params.embed(&address, depth + 8);
        prop_assert!(
            coarse.distance(fine) <= bound,
            "refinement moved farther than the bound {bound} at y={y}, α={alpha}, depth={depth}"
        );
    }

    #[test]
    fn boosts_preserve_the_interval_and_compose(
        chi in -3.0f64..3.0,
        eta in -3.0f64..3.0,
        x0 in -20.0f64..20.0,
        y in -20.0f64..20.0,
    ) {
        let p = SpacetimePoint::new(x0, Address::from_coordinate(y).unwrap());
        let q = boost_point(Boost::new(chi), &p).unwrap();
        let before = interval(x0, y);
        let after = interval(q.x0, q.x1.coordinate());
        prop_assert!(
            (before - after).abs() <= 1e-9 * before.abs().max(1.0),
            "interval drifted: {before} -> {after}"
        );
        let sequential = boost_point(Boost::new(eta), &q).unwrap();
        let composed = boost_point(Boost::new(chi).compose(Boost::new(eta)), &p).unwrap();
        let scale = sequential.x0.abs().max(sequential.x1.coordinate().abs()).max(1.0);
        prop_assert!((sequential.x0 - composed.x0).abs() <= 1e-9 * scale);
        prop_assert!(
            (sequential.x1.coordinate() - composed.x1.coordinate()).abs() <= 1e-9 * scale
        );
        let restored = boost_point(Boost::new(chi).inverse(), &q).unwrap();
        prop_assert!((restored.x0 - x0).abs() <= 1e-9 * scale);
        prop_assert!((restored.x1.coordinate() - y).abs() <= 1e-9 * scale);
    }

    #[test]
    fn wave_superposition_is_additive(
        sigma_a in 0.3f64..2.0,
        center_a in -2.0f64..2.0,
        freq in 0.5f64..4.0,
        t in -2.0f64..2.0,
        y in -5.0f64..5.0,
    ) {
        let params = KochParams::standard();
        let a = Profile::gaussian(sigma_a, center_a).unwrap();
        let b = Profile::sine_packet(freq, 1.0, 0.0).unwrap();
        let both =
            WaveField::new(WaveProfile::new(a.clone(), b.clone()), 1.0, params).unwrap();
        let left = WaveField::new(WaveProfile::left_mover(a), 1.0, params).unwrap();
        let right = WaveField::new(WaveProfile::right_mover(b), 1.0, params).unwrap();
        let sum = left.value_at(t, y).unwrap() + right.value_at(t, y).unwrap();
        prop_assert!((both.value_at(t, y).unwrap() - sum).abs() <= 1e-12);
    }
}

/// Random well-formed expression text: parenthesized binary combinations,
/// unary minus, and function calls over numeric, `x`, `pi`, `e` leaves.
fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0.0f64..100.0).prop_map(|v| format!("{v:.3}")),
        Just("x".to_string()),
        Just("pi".to_string()),
        Just("e".to_string()),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let func = prop_oneof![
            Just("sin"),
            Just("cos"),
            Just("exp"),
            Just("ln"),
            Just("sqrt"),
            Just("cbrt"),
            Just("abs"),
            Just("tanh"),
        ];
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})+({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})-({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})^({b})")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (func, inner).prop_map(|(f, a)| format!("{f}({a})")),
        ]
    })
}
