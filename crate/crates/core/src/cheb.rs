//! Chebyshev polynomials of the first and second kind, their zero sets, and
//! the two Gauss–Chebyshev rules used to discretize the expansion.
//!
//! Both rules are normalized against the probability-style weights
//! `(1/π)(1-x²)^{-1/2}` and `(1/π)(1-x²)^{1/2}`, so the first-kind rule has
//! unit mass and the second-kind rule has mass `1/2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Slack allowed past `|x| = 1` before an argument is rejected.
pub const DOMAIN_SLACK: f64 = 1e-14;

fn check_unit_interval(x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 + DOMAIN_SLACK) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `T_n(x) = cos(n arccos x)`, evaluated by the three-term recurrence.
pub fn chebyshev_t(n: usize, x: f64) -> Result<f64> {
    let x = check_unit_interval(x)?;
    Ok(t_recurrence(n, x))
}

/// Orthonormal first-kind polynomial: `T_0`, and `√2 T_n` for `n ≥ 1`.
pub fn chebyshev_t_tilde(n: usize, x: f64) -> Result<f64> {
    let t = chebyshev_t(n, x)?;
    Ok(if n == 0 {
        t
    } else {
        std::f64::consts::SQRT_2 * t
    })
}

/// `U_n(x) = sin((n+1)θ)/sin θ` with `x = cos θ`.
///
/// The recurrence `U_{k+1} = 2x U_k - U_{k-1}` has no removable singularity,
/// so `U_n(±1) = (±1)^n (n+1)` comes out exactly.
pub fn chebyshev_u(n: usize, x: f64) -> Result<f64> {
    let x = check_unit_interval(x)?;
    Ok(u_recurrence(n, x))
}

pub(crate) fn t_recurrence(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

pub(crate) fn u_recurrence(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Writes `U_0(x), .., U_{out.len()-1}(x)` into `out`.
pub(crate) fn fill_u(x: f64, out: &mut [f64]) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for slot in out.iter_mut() {
        *slot = cur;
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
}

/// Writes `T̃_0(x), .., T̃_{out.len()-1}(x)` into `out`.
pub(crate) fn fill_t_tilde(x: f64, out: &mut [f64]) {
    let mut prev = 1.0;
    let mut cur = x;
    for (r, slot) in out.iter_mut().enumerate() {
        match r {
            0 => *slot = 1.0,
            1 => *slot = std::f64::consts::SQRT_2 * x,
            _ => {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
                *slot = std::f64::consts::SQRT_2 * cur;
            }
        }
    }
}

/// Zeros of `T_n`: `cos((2l+1)π/(2n))` for `l = 0..n`, strictly decreasing.
pub fn nodes_first_kind(n: usize) -> Vec<f64> {
    (0..n)
        .map(|l| ((2 * l + 1) as f64 * PI / (2 * n) as f64).cos())
        .collect()
}

/// Zeros of `U_n`: `cos(jπ/(n+1))` for `j = 1..=n`, strictly decreasing.
pub fn nodes_second_kind(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|j| (j as f64 * PI / (n + 1) as f64).cos())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    FirstKind,
    SecondKind,
}

/// An `n`-point Gauss–Chebyshev rule. Exact for polynomials of degree `2n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Approximates `(1/π)∫ f(x)(1-x²)^{-1/2} dx` with equal weights `1/n`.
    pub fn first_kind(n: usize) -> Result<Self> {
        check_count(n)?;
        Ok(Self {
            kind: QuadratureKind::FirstKind,
            n,
            nodes: nodes_first_kind(n),
            weights: vec![1.0 / n as f64; n],
        })
    }

    /// Approximates `(1/π)∫ f(x)(1-x²)^{1/2} dx` with weights
    /// `sin²(jπ/(n+1))/(n+1)`.
    pub fn second_kind(n: usize) -> Result<Self> {
        check_count(n)?;
        let weights = (1..=n)
            .map(|j| {
                let s = (j as f64 * PI / (n + 1) as f64).sin();
                s * s / (n + 1) as f64
            })
            .collect();
        Ok(Self {
            kind: QuadratureKind::SecondKind,
            n,
            nodes: nodes_second_kind(n),
            weights,
        })
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn try_integrate<E>(&self, mut f: impl FnMut(f64) -> Result<f64, E>) -> Result<f64, E> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(x)?;
        }
        Ok(acc)
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one node".into(),
        ));
    }
    Ok(())
}

/// `(1/n) Σ f(z_{l,n})`.
pub fn quad_first_kind(f: impl FnMut(f64) -> f64, n: usize) -> Result<f64> {
    Ok(QuadratureRule::first_kind(n)?.integrate(f))
}

/// `(1/(n+1)) Σ sin²θ_j f(cos θ_j)` with `θ_j = jπ/(n+1)`.
pub fn quad_second_kind(f: impl FnMut(f64) -> f64, n: usize) -> Result<f64> {
    Ok(QuadratureRule::second_kind(n)?.integrate(f))
}
