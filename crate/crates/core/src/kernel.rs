//! The reconstruction kernel `T_{ν,j,l}(x, y, z)`.
//!
//! ```text
//! T_{ν,j,l}(x,y,z) = C_m Σ_{n=0}^{2m} Σ_{k=0}^{n} (k+1) sin((k+1)θ_j)
//!                     · U_k(cos σ_ν(x,y)) · T̃_{n-k}(z_l) T̃_{n-k}(z)
//! ```
//!
//! with `σ_ν(x,y) = arccos(x cos φ_ν + y sin φ_ν)`, orthonormal `T̃`, and
//! `C_m = 1/((2m+1)² · 2m)`. The constant collects the `1/(2m+1)` direction
//! average, the `1/(2m+1)` second-kind chord weights and the `1/(2m)`
//! first-kind slice weights; it is the unique choice that makes the operator
//! reproduce constants.
//!
//! Three evaluation routes exist: [`kernel_direct`] sums the double series
//! as written, [`kernel_compact`] collapses the `T̃` sum with the
//! Christoffel–Darboux formula, and [`KernelPlan`] fills every `(ν, j, l)`
//! cell at a point from shared factor tables.

use crate::angles::AngleSet;
use crate::cheb::{fill_t_tilde, fill_u};
use crate::error::{Error, Result};

/// Below this `sin σ_ν` the ridge factor takes its endpoint limit.
pub const RIDGE_SINGULAR_TOL: f64 = 1e-8;
/// Below this `|z - z_l|` the Christoffel–Darboux quotient is abandoned.
pub const CD_SINGULAR_TOL: f64 = 1e-7;

/// `1/((2m+1)² · 2m)`.
pub fn kernel_scale(m: usize) -> f64 {
    let d = (2 * m + 1) as f64;
    1.0 / (d * d * (2 * m) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    DirectSum,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEvaluation {
    pub value: f64,
    pub method: KernelMethod,
    /// Set when a removable-singularity fallback was used.
    pub condition_flag: bool,
}

pub(crate) fn check_point(x: f64, y: f64, z: f64) -> Result<f64> {
    let r2 = x * x + y * y;
    if !(r2 <= 1.0 + 1e-12) {
        return Err(Error::Domain {
            what: "x^2 + y^2",
            value: r2,
            domain: "[0, 1]",
        });
    }
    if !(z.abs() <= 1.0 + 1e-14) {
        return Err(Error::Domain {
            what: "z",
            value: z,
            domain: "[-1, 1]",
        });
    }
    Ok(z.clamp(-1.0, 1.0))
}

/// `cos σ_ν(x, y)`, clamped to `[-1, 1]`.
#[inline]
pub(crate) fn cos_sigma(x: f64, y: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    (x * c + y * s).clamp(-1.0, 1.0)
}

/// `σ_ν(x, y) ∈ [0, π]`.
pub fn sigma(x: f64, y: f64, nu: usize, angles: &AngleSet) -> Result<f64> {
    check_point(x, y, 0.0)?;
    if nu >= angles.n_directions() {
        return Err(Error::IndexOutOfRange {
            name: "nu",
            index: nu,
            bound: angles.n_directions(),
        });
    }
    Ok(cos_sigma(x, y, angles.phi[nu]).acos())
}

/// `cos σ`, snapped to `±1` when `sin σ` is below [`RIDGE_SINGULAR_TOL`].
fn ridge_argument(x: f64, y: f64, phi: f64) -> (f64, bool) {
    let c = cos_sigma(x, y, phi);
    let sin_sigma = (1.0 - c * c).max(0.0).sqrt();
    if sin_sigma < RIDGE_SINGULAR_TOL {
        (c.signum(), true)
    } else {
        (c, false)
    }
}

/// Sums the kernel series term by term.
pub fn kernel_direct(
    nu: usize,
    j: usize,
    l: usize,
    x: f64,
    y: f64,
    z: f64,
    angles: &AngleSet,
) -> Result<KernelEvaluation> {
    angles.check_indices(nu, j, l)?;
    let z = check_point(x, y, z)?;
    let (value, flag) = direct_unchecked(nu, j, l, x, y, z, angles);
    Ok(KernelEvaluation {
        value,
        method: KernelMethod::DirectSum,
        condition_flag: flag,
    })
}

fn direct_unchecked(
    nu: usize,
    j: usize,
    l: usize,
    x: f64,
    y: f64,
    z: f64,
    angles: &AngleSet,
) -> (f64, bool) {
    let n = angles.n_nodes();
    let (c, flag) = ridge_argument(x, y, angles.phi[nu]);
    let mut u = vec![0.0; n + 1];
    fill_u(c, &mut u);
    let mut tz = vec![0.0; n + 1];
    let mut tl = vec![0.0; n + 1];
    fill_t_tilde(z, &mut tz);
    fill_t_tilde(angles.z_nodes[l], &mut tl);
    let theta = angles.theta[j - 1];

    let mut acc = 0.0;
    for total in 0..=n {
        for k in 0..=total {
            let kp1 = (k + 1) as f64;
            acc += kp1 * (kp1 * theta).sin() * u[k] * tl[total - k] * tz[total - k];
        }
    }
    (kernel_scale(angles.m) * acc, flag)
}

/// Christoffel–Darboux sum `Σ_{r=0}^{N} T̃_r(z) T̃_r(z_l)` as a quotient.
fn christoffel_darboux(order: usize, gamma_z: f64, gamma_l: f64, dz: f64) -> f64 {
    let np1 = (order + 1) as f64;
    let n = order as f64;
    ((np1 * gamma_z).cos() * (n * gamma_l).cos() - (np1 * gamma_l).cos() * (n * gamma_z).cos()) / dz
}

/// Evaluates the kernel with the `z`-sum collapsed by Christoffel–Darboux.
/// Falls back to [`kernel_direct`] when `|z - z_l| <` [`CD_SINGULAR_TOL`].
pub fn kernel_compact(
    nu: usize,
    j: usize,
    l: usize,
    x: f64,
    y: f64,
    z: f64,
    angles: &AngleSet,
) -> Result<KernelEvaluation> {
    angles.check_indices(nu, j, l)?;
    let z = check_point(x, y, z)?;
    let zl = angles.z_nodes[l];
    let dz = z - zl;
    if dz.abs() < CD_SINGULAR_TOL {
        let (value, _) = direct_unchecked(nu, j, l, x, y, z, angles);
        return Ok(KernelEvaluation {
            value,
            method: KernelMethod::Compact,
            condition_flag: true,
        });
    }
    let n = angles.n_nodes();
    let (c, flag) = ridge_argument(x, y, angles.phi[nu]);
    let mut u = vec![0.0; n + 1];
    fill_u(c, &mut u);
    let theta = angles.theta[j - 1];
    let gamma_z = z.acos();
    let gamma_l = angles.gamma[l];

    let mut acc = 0.0;
    for (k, uk) in u.iter().enumerate() {
        let kp1 = (k + 1) as f64;
        acc += kp1 * (kp1 * theta).sin() * uk * christoffel_darboux(n - k, gamma_z, gamma_l, dz);
    }
    Ok(KernelEvaluation {
        value: kernel_scale(angles.m) * acc,
        method: KernelMethod::Compact,
        condition_flag: flag,
    })
}

/// `sin θ_j · |T_{ν,j,l}(x, y, z)|`.
pub fn lebesgue_cell(
    nu: usize,
    j: usize,
    l: usize,
    x: f64,
    y: f64,
    z: f64,
    angles: &AngleSet,
) -> Result<f64> {
    let k = kernel_compact(nu, j, l, x, y, z, angles)?;
    Ok(angles.sin_theta(j) * k.value.abs())
}

/// Point-independent factor tables for evaluating every kernel cell at once.
#[derive(Debug, Clone)]
pub struct KernelPlan {
    pub angles: AngleSet,
    scale: f64,
    /// `(k+1) sin((k+1) θ_j)`, laid out `[j-1][k]`.
    chord_factor: Vec<f64>,
    /// `T̃_r(z_l)`, laid out `[l][r]`.
    node_t: Vec<f64>,
    cos_phi: Vec<f64>,
    sin_phi: Vec<f64>,
}

impl KernelPlan {
    pub fn new(m: usize) -> Result<Self> {
        let angles = AngleSet::new(m)?;
        let n = angles.n_nodes();
        let mut chord_factor = Vec::with_capacity(n * (n + 1));
        for &theta in &angles.theta {
            for k in 0..=n {
                let kp1 = (k + 1) as f64;
                chord_factor.push(kp1 * (kp1 * theta).sin());
            }
        }
        let mut node_t = vec![0.0; n * (n + 1)];
        for (l, row) in node_t.chunks_mut(n + 1).enumerate() {
            fill_t_tilde(angles.z_nodes[l], row);
        }
        let cos_phi = angles.phi.iter().map(|p| p.cos()).collect();
        let sin_phi = angles.phi.iter().map(|p| p.sin()).collect();
        Ok(Self {
            scale: kernel_scale(m),
            angles,
            chord_factor,
            node_t,
            cos_phi,
            sin_phi,
        })
    }

    pub fn m(&self) -> usize {
        self.angles.m
    }

    /// Number of `(ν, j, l)` cells.
    pub fn n_cells(&self) -> usize {
        let n = self.angles.n_nodes();
        (n + 1) * n * n
    }

    /// Fills `out` with `T_{ν,j,l}(x, y, z)` in `(ν, j, l)` storage order,
    /// matching [`crate::radon::ProjectionDataset`].
    pub fn fill_cells(&self, x: f64, y: f64, z: f64, out: &mut [f64]) -> Result<()> {
        let z = check_point(x, y, z)?;
        assert_eq!(
            out.len(),
            self.n_cells(),
            "output buffer has the wrong length"
        );
        let n = self.angles.n_nodes();
        let w = n + 1;

        // z_factor[l][k] = Σ_{r=0}^{2m-k} T̃_r(z_l) T̃_r(z)
        let mut tz = vec![0.0; w];
        fill_t_tilde(z, &mut tz);
        let mut z_factor = vec![0.0; n * w];
        for l in 0..n {
            let tl = &self.node_t[l * w..(l + 1) * w];
            let row = &mut z_factor[l * w..(l + 1) * w];
            let mut partial = 0.0;
            for r in 0..=n {
                partial += tl[r] * tz[r];
                row[n - r] = partial;
            }
        }

        let mut u = vec![0.0; w];
        let mut weighted = vec![0.0; w];
        for nu in 0..=n {
            let c = (x * self.cos_phi[nu] + y * self.sin_phi[nu]).clamp(-1.0, 1.0);
            fill_u(c, &mut u);
            for j in 0..n {
                let cf = &self.chord_factor[j * w..(j + 1) * w];
                for k in 0..w {
                    weighted[k] = self.scale * cf[k] * u[k];
                }
                let base = (nu * n + j) * n;
                for l in 0..n {
                    let zf = &z_factor[l * w..(l + 1) * w];
                    out[base + l] = weighted.iter().zip(zf).map(|(a, b)| a * b).sum();
                }
            }
        }
        Ok(())
    }

    pub fn cells(&self, x: f64, y: f64, z: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n_cells()];
        self.fill_cells(x, y, z, &mut out)?;
        Ok(out)
    }
}
