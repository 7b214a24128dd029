//! Chords of the unit disk, Radon projections on horizontal slices of the
//! cylinder, and the finite projection dataset.
//!
//! The chord `I(θ; t)` is the set `{(t cos θ - s sin θ, t sin θ + s cos θ)}`
//! for `|s| ≤ √(1-t²)`: `θ` is the direction of the chord's normal and `t`
//! its signed distance from the origin. With this convention a ridge
//! polynomial `U_k(x cos α + y sin α)` projects to
//! `2√(1-t²)/(k+1) · U_k(t) · U_k(cos(α - θ))`.

use rayon::prelude::*;

use crate::angles::AngleSet;
use crate::cheb::u_recurrence;
use crate::error::{Error, Result};
use crate::gauss_legendre::GaussLegendre;
use crate::phantom::{ClosedForm, Field, Phantom, Polynomial3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub theta: f64,
    pub t: f64,
}

impl Chord {
    pub fn new(theta: f64, t: f64) -> Result<Self> {
        check_offset(t)?;
        Ok(Self { theta, t })
    }

    /// Half the chord length, `√(1-t²)`.
    pub fn half_length(&self) -> f64 {
        (1.0 - self.t * self.t).max(0.0).sqrt()
    }

    pub fn length(&self) -> f64 {
        2.0 * self.half_length()
    }
}

fn check_offset(t: f64) -> Result<()> {
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            domain: "[-1, 1]",
        });
    }
    Ok(())
}

fn check_height(z: f64) -> Result<()> {
    if !(z.abs() <= 1.0) {
        return Err(Error::Domain {
            what: "z",
            value: z,
            domain: "[-1, 1]",
        });
    }
    Ok(())
}

/// Point at arclength parameter `s` along the chord.
pub fn chord_point(chord: Chord, s: f64) -> Result<(f64, f64)> {
    check_offset(chord.t)?;
    if !(s.abs() <= chord.half_length() + 1e-12) {
        return Err(Error::Domain {
            what: "s",
            value: s,
            domain: "[-sqrt(1-t^2), sqrt(1-t^2)]",
        });
    }
    Ok(point_unchecked(chord.theta, chord.t, s))
}

#[inline]
fn point_unchecked(theta: f64, t: f64, s: f64) -> (f64, f64) {
    let (sin, cos) = theta.sin_cos();
    (t * cos - s * sin, t * sin + s * cos)
}

/// `R_θ(f(·,·,z); t)` by Gauss–Legendre quadrature of the given order on the
/// normalized chord parameter.
pub fn radon_numeric<F: Field + ?Sized>(
    f: &F,
    theta: f64,
    t: f64,
    z: f64,
    order: usize,
) -> Result<f64> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "chord quadrature order must be at least 2, got {order}"
        )));
    }
    check_offset(t)?;
    check_height(z)?;
    let rule = GaussLegendre::new(order)?;
    Ok(radon_with_rule(f, theta, t, z, &rule))
}

/// Same as [`radon_numeric`] with a prebuilt rule and no domain checks.
pub(crate) fn radon_with_rule<F: Field + ?Sized>(
    f: &F,
    theta: f64,
    t: f64,
    z: f64,
    rule: &GaussLegendre,
) -> f64 {
    let h = (1.0 - t * t).max(0.0).sqrt();
    if h == 0.0 {
        return 0.0;
    }
    let (sin, cos) = theta.sin_cos();
    let (x0, y0) = (t * cos, t * sin);
    let sum: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| {
            let s = h * u;
            w * f.value(x0 - s * sin, y0 + s * cos, z)
        })
        .sum();
    h * sum
}

/// Exact projection of the ridge polynomial `U_k(x cos α + y sin α)` (Marr's
/// identity).
pub fn radon_ridge_analytic(k: usize, ridge_angle: f64, theta: f64, t: f64) -> Result<f64> {
    check_offset(t)?;
    let h = (1.0 - t * t).sqrt();
    let c = (ridge_angle - theta).cos().clamp(-1.0, 1.0);
    Ok(2.0 * h / (k + 1) as f64 * u_recurrence(k, t) * u_recurrence(k, c))
}

/// Exact projection of a polynomial by binomial expansion along the chord.
pub fn radon_polynomial_exact(p: &Polynomial3, theta: f64, t: f64, z: f64) -> Result<f64> {
    check_offset(t)?;
    check_height(z)?;
    let h = (1.0 - t * t).max(0.0).sqrt();
    if h == 0.0 {
        return Ok(0.0);
    }
    let (sin, cos) = theta.sin_cos();
    // x = t cos θ + u (-h sin θ),  y = t sin θ + u (h cos θ),  u ∈ [-1, 1]
    let (x0, x1) = (t * cos, -h * sin);
    let (y0, y1) = (t * sin, h * cos);
    let mut total = 0.0;
    for &([a, b, c], coeff) in p.terms() {
        let xs = binomial_expand(x0, x1, a as usize);
        let ys = binomial_expand(y0, y1, b as usize);
        let mut integral = 0.0;
        for (i, xi) in xs.iter().enumerate() {
            for (j, yj) in ys.iter().enumerate() {
                if (i + j) % 2 == 0 {
                    integral += xi * yj * 2.0 / (i + j + 1) as f64;
                }
            }
        }
        total += coeff * z.powi(c as i32) * integral;
    }
    Ok(h * total)
}

/// Coefficients of `u^i` in `(c0 + c1 u)^n`.
fn binomial_expand(c0: f64, c1: f64, n: usize) -> Vec<f64> {
    let mut coeffs = vec![0.0; n + 1];
    coeffs[0] = 1.0;
    for deg in 1..=n {
        for i in (0..=deg).rev() {
            let from_const = if i < deg { coeffs[i] * c0 } else { 0.0 };
            let from_lin = if i > 0 { coeffs[i - 1] * c1 } else { 0.0 };
            coeffs[i] = from_const + from_lin;
        }
    }
    coeffs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Numeric,
    FileImport,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Analytic => "analytic",
            Provenance::Numeric => "numeric",
            Provenance::FileImport => "file-import",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "analytic" => Some(Provenance::Analytic),
            "numeric" => Some(Provenance::Numeric),
            "file-import" => Some(Provenance::FileImport),
            _ => None,
        }
    }
}

/// Radon data `R_{φ_ν}(f(·,·,z_l); cos θ_j)` for `ν = 0..=2m`, `j = 1..=2m`,
/// `l = 0..2m`, stored flat in `(ν, j, l)` lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionDataset {
    m: usize,
    values: Vec<f64>,
    pub provenance: Provenance,
}

impl ProjectionDataset {
    pub fn new(m: usize, values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let expected = Self::len_for(m);
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "m = {m} needs {expected} values, got {}",
                values.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            let (nu, j, l) = Self::unflatten(m, i);
            return Err(Error::NonFinite {
                value: *v,
                location: format!("(nu={nu}, j={j}, l={l})"),
            });
        }
        Ok(Self {
            m,
            values,
            provenance,
        })
    }

    /// `(2m+1) · 2m · 2m`.
    pub fn len_for(m: usize) -> usize {
        (2 * m + 1) * (2 * m) * (2 * m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `j` is 1-based.
    #[inline]
    pub fn get(&self, nu: usize, j: usize, l: usize) -> f64 {
        self.values[Self::flat_index(self.m, nu, j, l)]
    }

    #[inline]
    pub(crate) fn flat_index(m: usize, nu: usize, j: usize, l: usize) -> usize {
        let n = 2 * m;
        (nu * n + (j - 1)) * n + l
    }

    pub(crate) fn unflatten(m: usize, i: usize) -> (usize, usize, usize) {
        let n = 2 * m;
        (i / (n * n), (i / n) % n + 1, i % n)
    }

    /// Index triples `(ν, j, l)` in storage order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.values.len()).map(move |i| Self::unflatten(self.m, i))
    }

    /// `max |R| / (2 sin θ_j)`: a lower bound on `sup |f|` for the sampled
    /// function, since no chord integral exceeds chord length times `sup |f|`.
    pub fn chord_normalized_max(&self) -> f64 {
        let angles = AngleSet::new(self.m).expect("m >= 1");
        self.indices()
            .zip(&self.values)
            .map(|((_, j, _), v)| v.abs() / (2.0 * angles.sin_theta(j)))
            .fold(0.0, f64::max)
    }

    /// The 2-D slice at `z_l`, laid out `(ν, j)`.
    pub fn slice(&self, l: usize) -> DiskProjections {
        let n = 2 * self.m;
        let values = (0..=n)
            .flat_map(|nu| (1..=n).map(move |j| (nu, j)))
            .map(|(nu, j)| self.get(nu, j, l))
            .collect();
        DiskProjections { m: self.m, values }
    }

    /// `α·self + β·other`, for datasets of equal `m`.
    pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine datasets with m = {} and m = {}",
                self.m, other.m
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let provenance = if self.provenance == other.provenance {
            self.provenance
        } else {
            Provenance::Numeric
        };
        Self::new(self.m, values, provenance)
    }

    /// Cyclic shift of the direction index: entry `ν` moves to `ν + shift`.
    pub fn shift_directions(&self, shift: usize) -> Self {
        let n = 2 * self.m;
        let mut values = vec![0.0; self.values.len()];
        for (i, v) in self.values.iter().enumerate() {
            let (nu, j, l) = Self::unflatten(self.m, i);
            values[Self::flat_index(self.m, (nu + shift) % (n + 1), j, l)] = *v;
        }
        Self {
            m: self.m,
            values,
            provenance: self.provenance,
        }
    }
}

/// Radon data on the disk: `R_{φ_ν}(f; cos θ_j)` laid out `(ν, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskProjections {
    pub m: usize,
    pub values: Vec<f64>,
}

impl DiskProjections {
    pub fn new(m: usize, values: Vec<f64>) -> Result<Self> {
        let expected = (2 * m + 1) * 2 * m;
        if m == 0 || values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "disk projections for m = {m} need {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Self { m, values })
    }

    #[inline]
    pub fn get(&self, nu: usize, j: usize) -> f64 {
        self.values[nu * 2 * self.m + (j - 1)]
    }
}

/// Samples `f` on every chord `(φ_ν, cos θ_j)` and slice `z_l`.
pub fn collect_projections<F: Field + ?Sized>(
    f: &F,
    m: usize,
    order: usize,
) -> Result<ProjectionDataset> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "chord quadrature order must be at least 2, got {order}"
        )));
    }
    let angles = AngleSet::new(m)?;
    let rule = GaussLegendre::new(order)?;
    let values = (0..ProjectionDataset::len_for(m))
        .into_par_iter()
        .map(|i| {
            let (nu, j, l) = ProjectionDataset::unflatten(m, i);
            radon_with_rule(
                f,
                angles.phi[nu],
                angles.theta[j - 1].cos(),
                angles.z_nodes[l],
                &rule,
            )
        })
        .collect();
    ProjectionDataset::new(m, values, Provenance::Numeric)
}

/// Exact projections for polynomial and ridge phantoms.
pub fn collect_projections_analytic(f: &Phantom, m: usize) -> Result<ProjectionDataset> {
    let angles = AngleSet::new(m)?;
    let values = (0..ProjectionDataset::len_for(m))
        .into_par_iter()
        .map(|i| {
            let (nu, j, l) = ProjectionDataset::unflatten(m, i);
            let (theta, t, z) = (angles.phi[nu], angles.theta[j - 1].cos(), angles.z_nodes[l]);
            match f {
                Phantom::Polynomial(p) => radon_polynomial_exact(p, theta, t, z),
                Phantom::Closed(ClosedForm::Ridge { degree, angle }) => {
                    radon_ridge_analytic(*degree, *angle, theta, t)
                }
                Phantom::Closed(_) => Err(Error::InvalidArgument(format!(
                    "no closed-form projections for phantom `{f}`"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ProjectionDataset::new(m, values, Provenance::Analytic)
}

/// 2-D projections of a disk function `g(x, y)` for the disk operator.
pub fn collect_disk_projections<G>(g: &G, m: usize, order: usize) -> Result<DiskProjections>
where
    G: Fn(f64, f64) -> f64 + Sync,
{
    let angles = AngleSet::new(m)?;
    let rule = GaussLegendre::new(order)?;
    let field = |x: f64, y: f64, _z: f64| g(x, y);
    let n = 2 * m;
    let values = (0..(n + 1) * n)
        .into_par_iter()
        .map(|i| {
            let (nu, j) = (i / n, i % n + 1);
            radon_with_rule(
                &field,
                angles.phi[nu],
                angles.theta[j - 1].cos(),
                0.0,
                &rule,
            )
        })
        .collect();
    DiskProjections::new(m, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn chord_points() {
        let (x, y) = chord_point(Chord::new(0.0, 0.5).unwrap(), 0.0).unwrap();
        assert!(close(x, 0.5, 1e-16) && close(y, 0.0, 1e-16));
        let (x, y) = chord_point(Chord::new(FRAC_PI_2, 0.0).unwrap(), 0.7).unwrap();
        assert!(close(x, -0.7, 1e-15) && close(y, 0.0, 1e-15));
        let (x, y) = chord_point(Chord::new(0.0, 1.0).unwrap(), 0.0).unwrap();
        assert_eq!((x, y), (1.0, 0.0));
        assert!(chord_point(Chord { theta: 0.0, t: 0.6 }, 0.81).is_err());
        assert!(Chord::new(0.0, 1.5).is_err());
    }

    #[test]
    fn chord_points_stay_in_disk() {
        for k in 0..50 {
            let theta = k as f64 * 0.37;
            let t = (k as f64 * 0.11).sin();
            let c = Chord::new(theta, t).unwrap();
            for s in [-c.half_length(), 0.0, c.half_length()] {
                let (x, y) = chord_point(c, s).unwrap();
                assert!((x * x + y * y).sqrt() <= 1.0 + 1e-14);
            }
        }
    }

    #[test]
    fn numeric_examples() {
        let one = Phantom::constant_one();
        assert!(close(
            radon_numeric(&one, 0.3, 0.6, 0.0, 4).unwrap(),
            1.6,
            1e-14
        ));
        let x = |x: f64, _: f64, _: f64| x;
        assert!(close(
            radon_numeric(&x, 0.0, 0.0, 0.0, 4).unwrap(),
            0.0,
            1e-15
        ));
        let two_x = |x: f64, _: f64, _: f64| 2.0 * x;
        assert!(close(
            radon_numeric(&two_x, 0.0, 0.5, 0.0, 4).unwrap(),
            1.7320508075688772,
            1e-14
        ));
        assert!(radon_numeric(&one, 0.0, 0.0, 1.2, 4).is_err());
        assert!(radon_numeric(&one, 0.0, -1.01, 0.0, 4).is_err());
        assert!(radon_numeric(&one, 0.0, 0.0, 0.0, 1).is_err());
        assert_eq!(radon_numeric(&one, 0.4, 1.0, 0.0, 4).unwrap(), 0.0);
    }

    #[test]
    fn analytic_ridge_examples() {
        assert!(close(
            radon_ridge_analytic(0, 1.0, 2.0, 0.0).unwrap(),
            2.0,
            1e-15
        ));
        assert!(close(
            radon_ridge_analytic(1, 0.4, 0.4, 0.5).unwrap(),
            1.7320508075688772,
            1e-14
        ));
        let t = (PI / 4.0).cos();
        assert!(radon_ridge_analytic(3, PI / 4.0, 0.0, t).unwrap().abs() < 1e-14);
    }

    #[test]
    fn two_x_projection_against_trapezoid() {
        // brute-force chord integral with a fine trapezoid rule
        let (theta, t) = (0.0f64, 0.5f64);
        let h = (1.0 - t * t).sqrt();
        let n = 1_000_000;
        let ds = 2.0 * h / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let s = -h + i as f64 * ds;
            let (x, _) = point_unchecked(theta, t, s);
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * 2.0 * x;
        }
        acc *= ds;
        let gl = radon_numeric(&|x: f64, _: f64, _: f64| 2.0 * x, theta, t, 0.0, 4).unwrap();
        assert!(close(acc, gl, 1e-9));
        assert!(close(
            gl,
            radon_ridge_analytic(1, 0.0, 0.0, 0.5).unwrap(),
            1e-14
        ));
    }

    #[test]
    fn exact_polynomial_matches_quadrature() {
        let p = Polynomial3::from_terms([
            ([3, 1, 0], 0.7),
            ([0, 4, 1], -1.2),
            ([1, 1, 2], 0.3),
            ([0, 0, 0], 2.0),
        ]);
        let ph = Phantom::Polynomial(p.clone());
        for (theta, t, z) in [(0.3, 0.2, -0.4), (2.0, -0.9, 0.9), (5.0, 0.0, 0.0)] {
            let a = radon_polynomial_exact(&p, theta, t, z).unwrap();
            let b = radon_numeric(&ph, theta, t, z, 8).unwrap();
            assert!(close(a, b, 1e-13), "{a} vs {b}");
        }
    }

    #[test]
    fn collect_constant() {
        let d = collect_projections(&Phantom::constant_one(), 1, 4).unwrap();
        assert_eq!(d.values().len(), 12);
        let expected = 2.0 * (PI / 3.0).sin();
        for l in 0..2 {
            for nu in 0..3 {
                assert!(close(d.get(nu, 1, l), expected, 1e-14));
                assert!(close(d.get(nu, 2, l), expected, 1e-14));
            }
        }
    }

    #[test]
    fn collect_z() {
        let f = |_: f64, _: f64, z: f64| z;
        let d = collect_projections(&f, 1, 4).unwrap();
        let a = AngleSet::new(1).unwrap();
        for (nu, j, l) in d.indices().collect::<Vec<_>>() {
            let want = a.z_nodes[l] * 2.0 * a.sin_theta(j);
            assert!(close(d.get(nu, j, l), want, 1e-14));
        }
    }

    #[test]
    fn collect_radial_is_direction_independent() {
        let f = |x: f64, y: f64, _: f64| x * x + y * y;
        let d = collect_projections(&f, 2, 8).unwrap();
        let mut worst: f64 = 0.0;
        for (nu, j, l) in d.indices().collect::<Vec<_>>() {
            worst = worst.max((d.get(nu, j, l) - d.get(0, j, l)).abs());
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn dataset_validation() {
        assert!(ProjectionDataset::new(1, vec![0.0; 11], Provenance::Numeric).is_err());
        let mut v = vec![0.0; 12];
        v[5] = f64::INFINITY;
        assert!(matches!(
            ProjectionDataset::new(1, v, Provenance::Numeric),
            Err(Error::NonFinite { .. })
        ));
        for m in [1, 3] {
            for i in 0..ProjectionDataset::len_for(m) {
                let (nu, j, l) = ProjectionDataset::unflatten(m, i);
                assert_eq!(ProjectionDataset::flat_index(m, nu, j, l), i);
            }
        }
    }

    #[test]
    fn analytic_collection_rejects_closed_forms() {
        assert!(collect_projections_analytic(&Phantom::cos_exp(), 1).is_err());
        let a = collect_projections_analytic(&Phantom::ridge(3, 0.2), 2).unwrap();
        let n = collect_projections(&Phantom::ridge(3, 0.2), 2, 6).unwrap();
        for (x, y) in a.values().iter().zip(n.values()) {
            assert!(close(*x, *y, 1e-13));
        }
    }
}
