//! Numerical studies of the cylinder operator: Lebesgue-constant estimates,
//! the `m (log(m+1))²` growth check, and uniform convergence on smooth
//! phantoms.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::cheb::{fill_t_tilde, u_recurrence};
use crate::error::{Error, Result};
use crate::gauss_legendre::GaussLegendre;
use crate::kernel::{check_point, KernelPlan};
use crate::phantom::Phantom;
use crate::radon::{collect_projections, ProjectionDataset};
use crate::reconstruct::{EvaluationGrid, Reconstructor};

/// Ratio allowed between the largest and smallest normalized estimates.
pub const GROWTH_BAND: f64 = 4.0;

/// `m (log(m+1))²`.
pub fn growth_law(m: usize) -> f64 {
    let l = ((m + 1) as f64).ln();
    m as f64 * l * l
}

/// The point `(cos(π/(4m+2)), sin(π/(4m+2)), 1)` where the kernel sum is
/// known to attain the lower-bound growth.
pub fn lower_bound_point(m: usize) -> [f64; 3] {
    let a = PI / (4 * m + 2) as f64;
    [a.cos(), a.sin(), 1.0]
}

/// Evaluates `2 Σ_{ν,j,l} sin θ_j |T_{ν,j,l}(p)|` for a fixed `m`.
#[derive(Debug, Clone)]
pub struct LebesgueEvaluator {
    plan: KernelPlan,
    sin_theta: Vec<f64>,
}

impl LebesgueEvaluator {
    pub fn new(m: usize) -> Result<Self> {
        let plan = KernelPlan::new(m)?;
        let sin_theta = plan.angles.theta.iter().map(|t| t.sin()).collect();
        Ok(Self { plan, sin_theta })
    }

    pub fn m(&self) -> usize {
        self.plan.m()
    }

    fn sum_with(&self, p: [f64; 3], buf: &mut [f64]) -> Result<f64> {
        self.plan.fill_cells(p[0], p[1], p[2], buf)?;
        let n = self.plan.angles.n_nodes();
        let mut acc = 0.0;
        for (row, chunk) in buf.chunks(n).enumerate() {
            let j = row % n;
            acc += self.sin_theta[j] * chunk.iter().map(|v| v.abs()).sum::<f64>();
        }
        Ok(2.0 * acc)
    }

    pub fn sum(&self, x: f64, y: f64, z: f64) -> Result<f64> {
        let mut buf = vec![0.0; self.plan.n_cells()];
        self.sum_with([x, y, z], &mut buf)
    }

    /// Sums at every grid point, in grid order.
    pub fn sums(&self, grid: &EvaluationGrid) -> Result<Vec<f64>> {
        let n_cells = self.plan.n_cells();
        grid.points()
            .par_iter()
            .map_init(|| vec![0.0; n_cells], |buf, p| self.sum_with(*p, buf))
            .collect()
    }
}

pub fn lebesgue_sum(x: f64, y: f64, z: f64, m: usize) -> Result<f64> {
    LebesgueEvaluator::new(m)?.sum(x, y, z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueEstimate {
    pub m: usize,
    pub grid_max: f64,
    pub argmax_point: [f64; 3],
    pub lower_bound_point_value: f64,
    /// `grid_max / (m (log(m+1))²)`.
    pub normalized: f64,
}

/// Maximizes the kernel sum over `grid` together with the lower-bound
/// point. Ties keep the earliest grid point; the lower-bound point counts
/// as coming after the grid.
pub fn lebesgue_norm_estimate(m: usize, grid: &EvaluationGrid) -> Result<LebesgueEstimate> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let eval = LebesgueEvaluator::new(m)?;
    let sums = eval.sums(grid)?;
    let lb = lower_bound_point(m);
    let lb_value = eval.sum(lb[0], lb[1], lb[2])?;

    let (mut best, mut best_point) = (f64::NEG_INFINITY, grid.points()[0]);
    for (v, p) in sums.iter().zip(grid.points()) {
        if *v > best {
            best = *v;
            best_point = *p;
        }
    }
    if lb_value > best {
        best = lb_value;
        best_point = lb;
    }
    Ok(LebesgueEstimate {
        m,
        grid_max: best,
        argmax_point: best_point,
        lower_bound_point_value: lb_value,
        normalized: best / growth_law(m),
    })
}

/// Counts for [`EvaluationGrid::tensor_polar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub nr: usize,
    pub ntheta: usize,
    pub nz: usize,
}

impl Default for GridSpec {
    /// 12 radii × 24 angles × 16 heights.
    fn default() -> Self {
        Self {
            nr: 12,
            ntheta: 24,
            nz: 16,
        }
    }
}

impl GridSpec {
    pub fn grid(&self) -> Result<EvaluationGrid> {
        EvaluationGrid::tensor_polar(self.nr, self.ntheta, self.nz)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub rows: Vec<LebesgueEstimate>,
    /// `max normalized / min normalized`.
    pub band_ratio: f64,
    pub within_band: bool,
}

fn check_increasing(ms: &[usize]) -> Result<()> {
    if ms.is_empty() {
        return Err(Error::InvalidArgument("list of m values is empty".into()));
    }
    if ms.contains(&0) {
        return Err(Error::InvalidArgument("m values must be positive".into()));
    }
    if ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "m values must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Norm estimates for each `m`, normalized by `m (log(m+1))²`.
pub fn growth_check(ms: &[usize], spec: GridSpec) -> Result<GrowthReport> {
    check_increasing(ms)?;
    let grid = spec.grid()?;
    let rows = ms
        .iter()
        .map(|&m| lebesgue_norm_estimate(m, &grid))
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = rows.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
        (lo.min(r.normalized), hi.max(r.normalized))
    });
    let band_ratio = hi / lo;
    Ok(GrowthReport {
        rows,
        band_ratio,
        within_band: band_ratio <= GROWTH_BAND,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub m: usize,
    pub uniform_error: f64,
    pub phantom: String,
}

/// `max_grid |B_2m(f) - f|` for each `m`, from numerically projected data.
pub fn convergence_experiment(
    f: &Phantom,
    ms: &[usize],
    grid: &EvaluationGrid,
    order: usize,
) -> Result<Vec<ConvergenceRecord>> {
    check_increasing(ms)?;
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let exact: Vec<f64> = grid
        .points()
        .iter()
        .map(|p| f.eval(p[0], p[1], p[2]))
        .collect();
    ms.iter()
        .map(|&m| {
            let data: ProjectionDataset = collect_projections(f, m, order)?;
            let recon = Reconstructor::new(m)?.evaluate_grid(&data, grid)?;
            let uniform_error = recon
                .values
                .iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(ConvergenceRecord {
                m,
                uniform_error,
                phantom: f.to_string(),
            })
        })
        .collect()
}

/// True when errors strictly decrease along the records.
pub fn strictly_decreasing(records: &[ConvergenceRecord]) -> bool {
    records
        .windows(2)
        .all(|w| w[1].uniform_error < w[0].uniform_error)
}

/// Experimental estimate of the Lebesgue function of the continuous partial
/// sum `S_2m` at `p`: `(1/π²) ∫ |K_2m(p, q)| dq` with the reproducing kernel
/// of `Π_2m` for the weight `(1/π²)(1-s²)^{-1/2}`. The integrand is only
/// Lipschitz, so the quadrature converges slowly; this is a rough
/// companion to the `B_2m` estimates and its growth is conjectural.
pub fn partial_sum_lebesgue_function(
    m: usize,
    p: [f64; 3],
    radial: usize,
    angular: usize,
    vertical: usize,
) -> Result<f64> {
    let z = check_point(p[0], p[1], p[2])?;
    if m == 0 || radial == 0 || angular == 0 || vertical == 0 {
        return Err(Error::InvalidArgument(
            "m and quadrature sizes must be positive".into(),
        ));
    }
    let n = 2 * m;
    let r_rule = GaussLegendre::new(radial)?;
    let b_rule = GaussLegendre::new(vertical)?;

    let mut tz = vec![0.0; n + 1];
    fill_t_tilde(z, &mut tz);
    // z_factor[b][k] = Σ_{r=0}^{2m-k} T̃_r(s_b) T̃_r(z), with s = cos β
    let mut z_factor = Vec::with_capacity(vertical);
    let mut ts = vec![0.0; n + 1];
    for &u in &b_rule.nodes {
        fill_t_tilde((PI / 2.0 * (u + 1.0)).cos(), &mut ts);
        let mut row = vec![0.0; n + 1];
        let mut partial = 0.0;
        for r in 0..=n {
            partial += ts[r] * tz[r];
            row[n - r] = partial;
        }
        z_factor.push(row);
    }
    let dirs: Vec<Vec<(f64, f64)>> = (0..=n)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let a = j as f64 * PI / (k + 1) as f64;
                    (a.cos(), a.sin())
                })
                .collect()
        })
        .collect();
    let disk_kernel = |qx: f64, qy: f64| -> Vec<f64> {
        dirs.iter()
            .enumerate()
            .map(|(k, ds)| {
                ds.iter()
                    .map(|&(c, s)| {
                        let a = (p[0] * c + p[1] * s).clamp(-1.0, 1.0);
                        let b = (qx * c + qy * s).clamp(-1.0, 1.0);
                        u_recurrence(k, a) * u_recurrence(k, b)
                    })
                    .sum()
            })
            .collect()
    };

    let total: f64 = (0..radial * angular)
        .into_par_iter()
        .map(|i| {
            let (ir, ia) = (i / angular, i % angular);
            let r = 0.5 * (r_rule.nodes[ir] + 1.0);
            let wr = 0.5 * r_rule.weights[ir] * r;
            let a = 2.0 * PI * (ia as f64 + 0.5) / angular as f64;
            let wa = 2.0 * PI / angular as f64;
            let pk = disk_kernel(r * a.cos(), r * a.sin());
            let mut acc = 0.0;
            for (ib, zf) in z_factor.iter().enumerate() {
                let wb = PI / 2.0 * b_rule.weights[ib];
                let k_val: f64 = pk.iter().zip(zf).map(|(a, b)| a * b).sum();
                acc += wb * k_val.abs();
            }
            wr * wa * acc
        })
        .sum();
    Ok(total / (PI * PI))
}
