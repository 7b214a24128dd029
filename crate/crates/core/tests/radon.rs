mod common;

use common::{lagrange_eval, random_polynomial, rng};
use cylradon_core::{
    nodes_first_kind, radon_numeric, radon_polynomial_exact, radon_ridge_analytic, Phantom,
};
use proptest::prelude::*;
use rand::RngExt;
use std::f64::consts::TAU;

#[test]
fn marr_identity_for_ridge_polynomials() {
    let mut r = rng(2);
    for k in 0..=20usize {
        for _ in 0..50 {
            let ridge_angle = r.random_range(0.0..TAU);
            let theta = r.random_range(0.0..TAU);
            let t = r.random_range(-1.0..=1.0);
            let f = Phantom::ridge(k, ridge_angle);
            let numeric = radon_numeric(&f, theta, t, 0.0, k + 2).unwrap();
            let exact = radon_ridge_analytic(k, ridge_angle, theta, t).unwrap();
            assert!(
                (numeric - exact).abs() <= 1e-10,
                "k={k}: {numeric} vs {exact}"
            );
        }
    }
}

#[test]
fn projection_over_slice_is_a_polynomial_of_the_same_degree() {
    let mut r = rng(3);
    for k in 0..=10u32 {
        for _ in 0..3 {
            let p = random_polynomial(&mut r, k);
            let f = Phantom::Polynomial(p);
            let theta = r.random_range(0.0..TAU);
            let z0 = r.random_range(-1.0..=1.0);
            let scaled = |t: f64| {
                radon_numeric(&f, theta, t, z0, k as usize + 2).unwrap() / (1.0 - t * t).sqrt()
            };
            let nodes = nodes_first_kind(k as usize + 1);
            let values: Vec<f64> = nodes.iter().map(|&t| scaled(t)).collect();
            for _ in 0..100 {
                let t = r.random_range(-0.999..0.999);
                let resid = (lagrange_eval(&nodes, &values, t) - scaled(t)).abs();
                assert!(resid <= 1e-10, "k={k} t={t}: residual {resid}");
            }
        }
    }
}

#[test]
fn exact_and_numeric_polynomial_projections_agree() {
    let mut r = rng(4);
    for k in [0u32, 3, 6, 9] {
        let p = random_polynomial(&mut r, k);
        let f = Phantom::Polynomial(p.clone());
        for _ in 0..20 {
            let (theta, t, z) = (
                r.random_range(0.0..TAU),
                r.random_range(-1.0..=1.0),
                r.random_range(-1.0..=1.0),
            );
            let a = radon_polynomial_exact(&p, theta, t, z).unwrap();
            let b = radon_numeric(&f, theta, t, z, (k as usize / 2 + 1).max(2)).unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}

proptest! {
    #[test]
    fn constant_projection_is_even_in_t(theta in 0.0..TAU, t in 0.0f64..=1.0) {
        let one = Phantom::constant_one();
        let a = radon_numeric(&one, theta, t, 0.0, 4).unwrap();
        let b = radon_numeric(&one, theta, -t, 0.0, 4).unwrap();
        prop_assert!((a - b).abs() <= 1e-14);
    }

    #[test]
    fn rotation_covariance(alpha in 0.0..TAU, theta in 0.0..TAU, t in -1.0f64..=1.0, z in -1.0f64..=1.0) {
        let f = Phantom::cos_exp();
        let g = f.rotated(alpha);
        let a = radon_numeric(&g, theta + alpha, t, z, 24).unwrap();
        let b = radon_numeric(&f, theta, t, z, 24).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn projection_respects_chord_bound(theta in 0.0..TAU, t in -1.0f64..=1.0, z in -1.0f64..=1.0) {
        // |cos(2x+y) e^z| ≤ e
        let v = radon_numeric(&Phantom::cos_exp(), theta, t, z, 24).unwrap();
        prop_assert!(v.abs() <= 2.0 * (1.0 - t * t).sqrt() * std::f64::consts::E + 1e-14);
    }
}
