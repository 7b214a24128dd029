//! Reconstruction operators: the disk operator `A_2m`, the cylinder operator
//! `B_2m`, and a dense-quadrature reference for the partial sum `S_2m`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::angles::AngleSet;
use crate::cheb::{fill_t_tilde, fill_u};
use crate::error::{Error, Result};
use crate::gauss_legendre::GaussLegendre;
use crate::kernel::{check_point, cos_sigma, KernelPlan};
use crate::phantom::{Field, Phantom};
use crate::radon::{radon_with_rule, DiskProjections, ProjectionDataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    TensorPolar { nr: usize, ntheta: usize, nz: usize },
    Explicit,
}

/// Points of the closed cylinder at which to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationGrid {
    points: Vec<[f64; 3]>,
    pub kind: GridKind,
}

impl EvaluationGrid {
    /// Rejects any point outside the closed cylinder.
    pub fn explicit(points: Vec<[f64; 3]>) -> Result<Self> {
        for p in &points {
            check_point(p[0], p[1], p[2])?;
        }
        Ok(Self {
            points,
            kind: GridKind::Explicit,
        })
    }

    /// Polar tensor grid. Radii are `sin(iπ/(2(nr-1)))`, clustering at the
    /// rim; angles are `2πi/ntheta`; heights are the Chebyshev–Lobatto
    /// points `cos(iπ/(nz-1))`, which include `z = ±1`. A count of one
    /// gives `r = 0` or `z = 0`. The centre appears once per height.
    pub fn tensor_polar(nr: usize, ntheta: usize, nz: usize) -> Result<Self> {
        if nr == 0 || ntheta == 0 || nz == 0 {
            return Err(Error::InvalidArgument(
                "grid counts must all be at least 1".into(),
            ));
        }
        let radii: Vec<f64> = if nr == 1 {
            vec![0.0]
        } else {
            (0..nr)
                .map(|i| (i as f64 * PI / (2 * (nr - 1)) as f64).sin())
                .collect()
        };
        let heights: Vec<f64> = if nz == 1 {
            vec![0.0]
        } else {
            (0..nz)
                .map(|i| (i as f64 * PI / (nz - 1) as f64).cos())
                .collect()
        };
        let mut points = Vec::new();
        for &z in &heights {
            for &r in &radii {
                if r == 0.0 {
                    points.push([0.0, 0.0, z]);
                    continue;
                }
                for a in 0..ntheta {
                    let angle = 2.0 * PI * a as f64 / ntheta as f64;
                    points.push([r * angle.cos(), r * angle.sin(), z]);
                }
            }
        }
        Ok(Self {
            points,
            kind: GridKind::TensorPolar { nr, ntheta, nz },
        })
    }

    /// `n` points from the Halton sequence in bases 2, 3, 5, mapped
    /// uniformly onto the cylinder.
    pub fn scattered(n: usize) -> Self {
        let points = (1..=n)
            .map(|i| {
                let (u, v, w) = (halton(i, 2), halton(i, 3), halton(i, 5));
                let r = u.sqrt();
                let a = 2.0 * PI * v;
                [r * a.cos(), r * a.sin(), 2.0 * w - 1.0]
            })
            .collect();
        Self {
            points,
            kind: GridKind::Explicit,
        }
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Appends a point, checking the domain.
    pub fn push(&mut self, p: [f64; 3]) -> Result<()> {
        check_point(p[0], p[1], p[2])?;
        self.points.push(p);
        self.kind = GridKind::Explicit;
        Ok(())
    }
}

fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionMethod {
    DiscreteB2m,
    ReferenceS2m,
}

impl ReconstructionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ReconstructionMethod::DiscreteB2m => "B2m",
            ReconstructionMethod::ReferenceS2m => "S2m",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub grid: EvaluationGrid,
    pub values: Vec<f64>,
    pub m: usize,
    pub method: ReconstructionMethod,
}

/// `A_2m(f)(x, y)` from disk projections `R_{φ_ν}(f; cos θ_j)`.
pub fn disk_operator_a2m(projections: &DiskProjections, x: f64, y: f64) -> Result<f64> {
    let m = projections.m;
    if projections.values.len() != (2 * m + 1) * 2 * m {
        return Err(Error::DimensionMismatch(format!(
            "disk projections for m = {m} need {} values, got {}",
            (2 * m + 1) * 2 * m,
            projections.values.len()
        )));
    }
    check_point(x, y, 0.0)?;
    let angles = AngleSet::new(m)?;
    let n = 2 * m;
    let mut u = vec![0.0; n + 1];
    let mut acc = 0.0;
    for nu in 0..=n {
        fill_u(cos_sigma(x, y, angles.phi[nu]), &mut u);
        for j in 1..=n {
            let theta = angles.theta[j - 1];
            let ridge: f64 = u
                .iter()
                .enumerate()
                .map(|(k, uk)| {
                    let kp1 = (k + 1) as f64;
                    kp1 * (kp1 * theta).sin() * uk
                })
                .sum();
            acc += projections.get(nu, j) * ridge;
        }
    }
    let d = (n + 1) as f64;
    Ok(acc / (d * d))
}

/// Evaluates `B_2m` for datasets of one fixed `m`, reusing kernel tables.
#[derive(Debug, Clone)]
pub struct Reconstructor {
    plan: KernelPlan,
}

impl Reconstructor {
    pub fn new(m: usize) -> Result<Self> {
        Ok(Self {
            plan: KernelPlan::new(m)?,
        })
    }

    pub fn plan(&self) -> &KernelPlan {
        &self.plan
    }

    fn check(&self, dataset: &ProjectionDataset) -> Result<()> {
        if dataset.m() != self.plan.m() {
            return Err(Error::DimensionMismatch(format!(
                "dataset has m = {}, operator has m = {}",
                dataset.m(),
                self.plan.m()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, dataset: &ProjectionDataset, x: f64, y: f64, z: f64) -> Result<f64> {
        self.check(dataset)?;
        let mut buf = vec![0.0; self.plan.n_cells()];
        self.evaluate_with(dataset, [x, y, z], &mut buf)
    }

    fn evaluate_with(
        &self,
        dataset: &ProjectionDataset,
        p: [f64; 3],
        buf: &mut [f64],
    ) -> Result<f64> {
        self.plan.fill_cells(p[0], p[1], p[2], buf)?;
        Ok(dataset
            .values()
            .iter()
            .zip(buf.iter())
            .map(|(r, t)| r * t)
            .sum())
    }

    /// Values at every grid point, in grid order. Each point is computed
    /// independently, so the result does not depend on scheduling.
    pub fn evaluate_grid(
        &self,
        dataset: &ProjectionDataset,
        grid: &EvaluationGrid,
    ) -> Result<ReconstructionResult> {
        self.check(dataset)?;
        let n_cells = self.plan.n_cells();
        let values = grid
            .points()
            .par_iter()
            .map_init(
                || vec![0.0; n_cells],
                |buf, p| self.evaluate_with(dataset, *p, buf),
            )
            .collect::<Result<Vec<f64>>>()?;
        Ok(ReconstructionResult {
            grid: grid.clone(),
            values,
            m: self.plan.m(),
            method: ReconstructionMethod::DiscreteB2m,
        })
    }
}

/// `B_2m(f)(x, y, z) = Σ_{ν,j,l} R_{ν,j,l} · T_{ν,j,l}(x, y, z)`.
pub fn cylinder_operator_b2m(dataset: &ProjectionDataset, x: f64, y: f64, z: f64) -> Result<f64> {
    Reconstructor::new(dataset.m())?.evaluate(dataset, x, y, z)
}

pub fn reconstruct_grid(
    dataset: &ProjectionDataset,
    grid: &EvaluationGrid,
) -> Result<ReconstructionResult> {
    Reconstructor::new(dataset.m())?.evaluate_grid(dataset, grid)
}

/// The semi-discrete partial sum `S_2m` with both integrals replaced by
/// dense Gauss–Legendre rules in angular variables: `t = cos α` and
/// `s = cos β`, `α, β ∈ [0, π]`. The substitution makes both integrands
/// smooth, and the rules share nothing with the Chebyshev rules inside
/// `B_2m`.
#[derive(Debug, Clone)]
pub struct PartialSumReference {
    m: usize,
    angles: AngleSet,
    /// `cos α_a`, and the weight `(π/2) w_a sin α_a` for `dt = sin α dα`.
    t_nodes: Vec<(f64, f64)>,
    /// `cos β_b` with weight `(π/2) w_b` for `ds/√(1-s²) = dβ`.
    s_nodes: Vec<(f64, f64)>,
    /// Projections `R_{φ_ν}(f(·,·,s_b); t_a)`, laid out `[ν][b][a]`.
    projections: Vec<f64>,
}

impl PartialSumReference {
    pub fn new<F: Field + ?Sized>(
        f: &F,
        m: usize,
        dense_order: usize,
        chord_order: usize,
    ) -> Result<Self> {
        if dense_order < 4 * m {
            return Err(Error::InvalidArgument(format!(
                "dense order {dense_order} is below 4m = {}",
                4 * m
            )));
        }
        let angles = AngleSet::new(m)?;
        let dense = GaussLegendre::new(dense_order)?;
        let chord = GaussLegendre::new(chord_order.max(2))?;
        let half_pi = PI / 2.0;
        let angular: Vec<(f64, f64)> = dense
            .nodes
            .iter()
            .zip(&dense.weights)
            .map(|(&u, &w)| (half_pi * (u + 1.0), half_pi * w))
            .collect();
        let t_nodes: Vec<(f64, f64)> = angular
            .iter()
            .map(|&(a, w)| (a.cos(), w * a.sin()))
            .collect();
        let s_nodes: Vec<(f64, f64)> = angular.iter().map(|&(b, w)| (b.cos(), w)).collect();

        let q = dense_order;
        let projections = (0..(2 * m + 1) * q * q)
            .into_par_iter()
            .map(|i| {
                let (nu, b, a) = (i / (q * q), (i / q) % q, i % q);
                radon_with_rule(f, angles.phi[nu], t_nodes[a].0, s_nodes[b].0, &chord)
            })
            .collect();
        Ok(Self {
            m,
            angles,
            t_nodes,
            s_nodes,
            projections,
        })
    }

    pub fn evaluate(&self, x: f64, y: f64, z: f64) -> Result<f64> {
        let z = check_point(x, y, z)?;
        let m = self.m;
        let n = 2 * m;
        let q = self.t_nodes.len();

        let mut tz = vec![0.0; n + 1];
        fill_t_tilde(z, &mut tz);
        // z_factor[b][k] = Σ_{r=0}^{2m-k} T̃_r(s_b) T̃_r(z)
        let mut ts = vec![0.0; n + 1];
        let mut z_factor = vec![0.0; q * (n + 1)];
        for (b, &(s, _)) in self.s_nodes.iter().enumerate() {
            fill_t_tilde(s, &mut ts);
            let row = &mut z_factor[b * (n + 1)..(b + 1) * (n + 1)];
            let mut partial = 0.0;
            for r in 0..=n {
                partial += ts[r] * tz[r];
                row[n - r] = partial;
            }
        }
        // (k+1) U_k(t_a)
        let mut ut = vec![0.0; q * (n + 1)];
        for (a, &(t, _)) in self.t_nodes.iter().enumerate() {
            let row = &mut ut[a * (n + 1)..(a + 1) * (n + 1)];
            fill_u(t, row);
            for (k, v) in row.iter_mut().enumerate() {
                *v *= (k + 1) as f64;
            }
        }

        let mut u_sigma = vec![0.0; n + 1];
        let mut total = 0.0;
        for nu in 0..=n {
            fill_u(cos_sigma(x, y, self.angles.phi[nu]), &mut u_sigma);
            for (b, &(_, wb)) in self.s_nodes.iter().enumerate() {
                let zf = &z_factor[b * (n + 1)..(b + 1) * (n + 1)];
                let proj = &self.projections[(nu * q + b) * q..(nu * q + b + 1) * q];
                // Σ_a w_a R(t_a) (k+1)U_k(t_a), then contract with k
                let mut per_k = vec![0.0; n + 1];
                for (a, &(_, wa)) in self.t_nodes.iter().enumerate() {
                    let rw = wa * proj[a];
                    for (pk, u) in per_k.iter_mut().zip(&ut[a * (n + 1)..(a + 1) * (n + 1)]) {
                        *pk += rw * u;
                    }
                }
                let inner: f64 = (0..=n).map(|k| per_k[k] * u_sigma[k] * zf[k]).sum();
                total += wb * inner;
            }
        }
        Ok(total / (PI * PI * (2 * m + 1) as f64))
    }
}

/// One-shot `S_2m(f)(x, y, z)`; chord integrals use the phantom's default
/// Gauss–Legendre order.
pub fn reference_partial_sum_s2m(
    f: &Phantom,
    m: usize,
    x: f64,
    y: f64,
    z: f64,
    dense_order: usize,
) -> Result<f64> {
    PartialSumReference::new(f, m, dense_order, f.default_order())?.evaluate(x, y, z)
}
