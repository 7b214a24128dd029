mod common;

use common::{random_point, rng};
use cylradon_core::{
    collect_projections, convergence_experiment, growth_law, lebesgue_sum, lower_bound_point,
    EvaluationGrid, LebesgueEvaluator, Phantom, Reconstructor,
};
use rand::RngExt;

#[test]
fn kernel_sum_is_continuous_away_from_fallback_zones() {
    let mut r = rng(14);
    for m in [1usize, 2, 4, 8] {
        let eval = LebesgueEvaluator::new(m).unwrap();
        for _ in 0..20 {
            let [x, y, z] = random_point(&mut r);
            let [x, y] = [x * 0.99, y * 0.99];
            let z = z * 0.99;
            let base = eval.sum(x, y, z).unwrap();
            let dx = r.random_range(-1e-9..1e-9);
            let dz = r.random_range(-1e-9..1e-9);
            let moved = eval.sum(x + dx, y - dx, z + dz).unwrap();
            assert!((moved - base).abs() < 1e-4 * base, "m={m}");
        }
    }
}

#[test]
fn lower_bound_point_value_grows_superlinearly() {
    for m in [2usize, 4, 8] {
        let p = lower_bound_point(m);
        let q = lower_bound_point(2 * m);
        let v = lebesgue_sum(p[0], p[1], p[2], m).unwrap();
        let w = lebesgue_sum(q[0], q[1], q[2], 2 * m).unwrap();
        assert!(w / v > 2.0, "m={m}: {w} / {v}");
    }
}

#[test]
fn lower_bound_point_ratio_to_growth_law_is_stable() {
    // constants are unspecified; only check the ratio stays within a band
    let ratios: Vec<f64> = [4usize, 8, 12]
        .iter()
        .map(|&m| {
            let p = lower_bound_point(m);
            lebesgue_sum(p[0], p[1], p[2], m).unwrap() / growth_law(m)
        })
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(lo > 0.0 && hi / lo < 4.0, "{ratios:?}");
}

#[test]
fn operator_is_dominated_by_the_kernel_sum() {
    let mut r = rng(15);
    for f in [
        Phantom::cos_exp(),
        Phantom::from_catalog("bump", &[0.2, 0.0, -0.1, 0.6]).unwrap(),
        Phantom::from_catalog("gaussian", &[]).unwrap(),
    ] {
        for m in [2usize, 4] {
            let data = collect_projections(&f, m, 32).unwrap();
            let bound = data.chord_normalized_max();
            let rec = Reconstructor::new(m).unwrap();
            for _ in 0..10 {
                let [x, y, z] = random_point(&mut r);
                let v = rec.evaluate(&data, x, y, z).unwrap();
                let l = lebesgue_sum(x, y, z, m).unwrap();
                assert!(v.abs() <= bound * l + 1e-12);
            }
        }
    }
}

#[test]
fn smooth_phantom_errors_decrease() {
    let grid = EvaluationGrid::scattered(100);
    let recs = convergence_experiment(&Phantom::cos_exp(), &[2, 4, 8], &grid, 24).unwrap();
    assert!(
        recs.windows(2)
            .all(|w| w[1].uniform_error < w[0].uniform_error),
        "{recs:?}"
    );
    assert!(recs
        .iter()
        .all(|r| r.uniform_error >= 0.0 && r.uniform_error.is_finite()));
}

#[test]
fn bump_errors_decrease() {
    let bump = Phantom::from_catalog("bump", &[]).unwrap();
    let grid = EvaluationGrid::scattered(100);
    let recs = convergence_experiment(&bump, &[2, 4, 8, 16], &grid, 48).unwrap();
    assert!(
        recs.last().unwrap().uniform_error < recs[0].uniform_error,
        "{recs:?}"
    );
}
