use proptest::prelude::*;

use fewnomial::sharpsearch::{
    certify_example, critical_structure, derive_phi, filter_exponents, search, search_level,
    SearchConfig,
};
use fewnomial::{DensePoly, DistributionTarget, ExponentTuple, IntervalId, Rational};

/// Valid tuples with `k3 < k2`, the branch the rational map is derived for.
fn tuple_strategy() -> impl Strategy<Value = ExponentTuple> {
    (2u32..=12, 1u32..=11, 0u32..=6, 0u32..=8).prop_filter_map("valid", |(k2, k3, l2, extra)| {
        if k3 >= k2 {
            return None;
        }
        ExponentTuple::new(k2, k3, l2, k2 + l2 + 1 + extra).ok()
    })
}

fn b_strategy() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=9)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(n, d))
}

/// `(1+x)^(l1+1) f'(x)` for `f = N / (1+x)^l1`, by the quotient rule.
fn scaled_derivative(b: &Rational, e: &ExponentTuple) -> DensePoly {
    let n = &DensePoly::binomial_power(e.l2 as usize)
        .shift_up(e.k2 as usize)
        .scale(b)
        + &DensePoly::monomial(Rational::one(), e.k3 as usize);
    let one_plus_x = DensePoly::from_i64(&[1, 1]);
    &(&n.derivative() * &one_plus_x) - &n.scale(&Rational::from(e.l1 as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivative_factors_through_the_linear_forms(b in b_strategy(), e in tuple_strategy()) {
        let phi = derive_phi(&b, &e).unwrap();
        let rhs = &(&DensePoly::binomial_power(e.l2 as usize).shift_up((e.k2 - e.k3) as usize) * &phi.a1).scale(&b)
            + &phi.a2;
        let lhs = scaled_derivative(&b, &e);
        prop_assert_eq!(lhs, rhs.shift_up(e.k3 as usize - 1));
    }

    #[test]
    fn critical_points_avoid_zero_and_minus_one(b in b_strategy(), e in tuple_strategy()) {
        prop_assume!(e.l2 > 0);
        for (iv, id) in critical_structure(&b, &e).unwrap() {
            prop_assert!(!iv.contains(&Rational::zero()) || !iv.is_exact());
            prop_assert!(!iv.contains(&Rational::from(-1)) || !iv.is_exact());
            let lo = iv.lo.clone();
            let expected = if lo.signum() >= 0 { IntervalId::I1 } else if lo < -1 { IntervalId::I2 } else { IntervalId::I3 };
            prop_assert_eq!(id, expected);
        }
    }

    #[test]
    fn wrong_signs_never_certify(
        an in 0i64..=5000,
        bn in -400i64..=0,
        flip in any::<bool>(),
    ) {
        let e = ExponentTuple::new(5, 2, 2, 17).unwrap();
        // either a >= 0 with the published b, or the published a with b <= 0
        let (a, b) = if flip {
            (Rational::new(an, 1_000_000), Rational::from(29))
        } else {
            (Rational::new(-601, 250_000), Rational::from(bn))
        };
        let ex = certify_example(&a, &b, &e).unwrap();
        prop_assert!(!ex.within_target);
        prop_assert!(ex.reduced_counts[0] < 4);
    }
}

#[test]
fn level_candidates_certify_or_are_dropped() {
    let target = DistributionTarget::canonical();
    let e = ExponentTuple::new(5, 2, 2, 17).unwrap();
    let mut certified = 0;
    for b in [8i64, 16, 29, 64, 128] {
        let b = Rational::from(b);
        for a in search_level(&b, &e, &target).unwrap() {
            let ex = certify_example(&a, &b, &e).unwrap();
            if ex.within_target {
                certified += 1;
                assert_eq!(ex.report.total, 11);
            }
        }
    }
    assert!(certified >= 1);
}

#[test]
fn search_output_is_certified_and_filtered() {
    let config = SearchConfig {
        k2: 5..=9,
        k3: 2..=2,
        l2: 2..=2,
        l1: 13..=17,
        b_grid: vec![Rational::from(29), Rational::from(128), Rational::from(256)],
        target: DistributionTarget::canonical(),
        apply_filter: false,
        width: Rational::new(1, 100_000),
    };
    let found = search(&config).unwrap();
    assert!(found
        .iter()
        .any(|ex| ex.exponents == ExponentTuple::new(5, 2, 2, 17).unwrap()));
    for ex in &found {
        assert!(ex.within_target && ex.all_simple);
        assert_eq!(ex.reduced_counts, [4, 2, 3]);
        assert_eq!(ex.report.total, 11);
        assert!(
            filter_exponents(&ex.exponents, &config.target)
                .unwrap()
                .passed(),
            "{}",
            ex.exponents
        );
        let pattern = fewnomial::sharpsearch::critical_pattern(&ex.b, &ex.exponents).unwrap();
        assert!(
            pattern[0] >= 3 && pattern[1] >= 1 && pattern[2] >= 2,
            "{pattern:?}"
        );
    }
    let again = search(&config).unwrap();
    assert_eq!(found, again);
}
