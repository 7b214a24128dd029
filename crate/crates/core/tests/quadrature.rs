mod common;

use common::{first_kind_moment, rng, second_kind_moment};
use cylradon_core::{chebyshev_t, chebyshev_t_tilde, chebyshev_u, QuadratureRule};
use proptest::prelude::*;
use rand::RngExt;

#[test]
fn moment_oracle_sanity() {
    assert_eq!(first_kind_moment(0), 1.0);
    assert_eq!(first_kind_moment(2), 0.5);
    assert_eq!(first_kind_moment(4), 0.375);
    assert_eq!(second_kind_moment(0), 0.5);
    assert_eq!(second_kind_moment(2), 0.125);
}

#[test]
fn both_rules_are_exact_to_degree_2n_minus_1() {
    for n in [1usize, 2, 4, 8, 16, 32, 64] {
        let first = QuadratureRule::first_kind(n).unwrap();
        let second = QuadratureRule::second_kind(n).unwrap();
        for k in 0..2 * n {
            for (rule, want) in [
                (&first, first_kind_moment(k)),
                (&second, second_kind_moment(k)),
            ] {
                let got = rule.integrate(|x| x.powi(k as i32));
                let err = if want == 0.0 {
                    got.abs()
                } else {
                    ((got - want) / want).abs()
                };
                assert!(err <= 1e-12, "{:?} n={n} k={k}: {got} vs {want}", rule.kind);
            }
        }
    }
}

#[test]
fn first_kind_rule_is_not_exact_at_degree_2n() {
    let n = 4;
    let rule = QuadratureRule::first_kind(n).unwrap();
    let got = rule.integrate(|x| x.powi(2 * n as i32));
    assert!((got - first_kind_moment(2 * n)).abs() > 1e-3);
}

#[test]
fn recurrence_agrees_with_trigonometric_form() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let n = r.random_range(0..=100usize);
        let x: f64 = r.random_range(-1.0..=1.0);
        let want = (n as f64 * x.acos()).cos();
        let got = chebyshev_t(n, x).unwrap();
        assert!((got - want).abs() <= 1e-12, "n={n} x={x}: {got} vs {want}");
    }
}

#[test]
fn u_approaches_its_endpoint_limit() {
    let eps = 1e-8;
    for n in 0..40usize {
        let np1 = (n + 1) as f64;
        let v = chebyshev_u(n, 1.0 - eps).unwrap();
        assert!((v - np1).abs() <= 1e-4 * np1 * np1);
        let v = chebyshev_u(n, -1.0 + eps).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!((v - sign * np1).abs() <= 1e-4 * np1 * np1);
    }
}

proptest! {
    #[test]
    fn t_tilde_orthonormal_under_first_kind_rule(
        (n, a, b) in (1usize..24)
            .prop_flat_map(|n| (Just(n), 0..2 * n))
            .prop_flat_map(|(n, a)| (Just(n), Just(a), 0..2 * n - a))
    ) {
        let rule = QuadratureRule::first_kind(n).unwrap();
        let v = rule.integrate(|x| chebyshev_t_tilde(a, x).unwrap() * chebyshev_t_tilde(b, x).unwrap());
        let want = if a == b { 1.0 } else { 0.0 };
        prop_assert!((v - want).abs() <= 1e-12);
    }

    #[test]
    fn u_matches_sine_ratio_in_the_interior(n in 0usize..60, theta in 0.01f64..3.13) {
        let want = ((n + 1) as f64 * theta).sin() / theta.sin();
        let got = chebyshev_u(n, theta.cos()).unwrap();
        prop_assert!((got - want).abs() <= 1e-10 * (n as f64 + 1.0).powi(2));
    }
}
