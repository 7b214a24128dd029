//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use cylradon_core::{AngleSet, Phantom, Polynomial3};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `(1/π)∫ x^k (1-x²)^{-1/2} dx`: zero for odd `k`, else `C(k, k/2)/2^k`.
pub fn first_kind_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    // m_{k+2} = m_k (k+1)/(k+2)
    let mut v = 1.0;
    let mut i = 0;
    while i < k {
        v *= (i + 1) as f64 / (i + 2) as f64;
        i += 2;
    }
    v
}

/// `(1/π)∫ x^k (1-x²)^{1/2} dx = m_k - m_{k+2} = m_k/(k+2)`.
pub fn second_kind_moment(k: usize) -> f64 {
    first_kind_moment(k) / (k + 2) as f64
}

/// Uniform point of the closed cylinder.
pub fn random_point(rng: &mut StdRng) -> [f64; 3] {
    let r = rng.random_range(0.0..1.0f64).sqrt();
    let a = rng.random_range(0.0..std::f64::consts::TAU);
    [r * a.cos(), r * a.sin(), rng.random_range(-1.0..=1.0)]
}

/// Every monomial of total degree ≤ `degree` with a coefficient in
/// `[-1, 1]`; the top-degree `z^degree` term is forced nonzero so the
/// degree is exact.
pub fn random_polynomial(rng: &mut StdRng, degree: u32) -> Polynomial3 {
    let mut p = Polynomial3::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            for c in 0..=degree - a - b {
                p.add_term([a, b, c], rng.random_range(-1.0..=1.0));
            }
        }
    }
    p.add_term([0, 0, degree], 1.5);
    p
}

/// Same polynomial evaluated with Horner-free naive powers; an oracle for
/// phantom evaluation.
pub fn eval_poly(p: &Polynomial3, x: f64, y: f64, z: f64) -> f64 {
    p.terms()
        .iter()
        .map(|&([a, b, c], k)| k * x.powi(a as i32) * y.powi(b as i32) * z.powi(c as i32))
        .sum()
}

pub fn poly_phantom(p: Polynomial3) -> Phantom {
    Phantom::Polynomial(p)
}

/// Kernel at `z = 1` from the closed form
/// `C/(sin σ sin(γ_l/2)) Σ_k (k+1) sin((k+1)σ) sin((k+1)θ_j) sin((2m-k+1/2)γ_l)`.
/// Requires `sin σ ≠ 0`.
pub fn kernel_top_face(m: usize, nu: usize, j: usize, l: usize, x: f64, y: f64) -> f64 {
    let a = AngleSet::new(m).unwrap();
    let c = (x * a.phi[nu].cos() + y * a.phi[nu].sin()).clamp(-1.0, 1.0);
    let sigma = c.acos();
    let theta = a.theta[j - 1];
    let gamma = a.gamma[l];
    let mut acc = 0.0;
    for k in 0..=2 * m {
        let kp1 = (k + 1) as f64;
        acc += kp1
            * (kp1 * sigma).sin()
            * (kp1 * theta).sin()
            * (((2 * m - k) as f64 + 0.5) * gamma).sin();
    }
    let scale = 1.0 / (((2 * m + 1) * (2 * m + 1) * 2 * m) as f64);
    scale * acc / (sigma.sin() * (gamma / 2.0).sin())
}

/// Barycentric Lagrange interpolant through `(nodes, values)`.
pub fn lagrange_eval(nodes: &[f64], values: &[f64], t: f64) -> f64 {
    let n = nodes.len();
    let weights: Vec<f64> = (0..n)
        .map(|i| {
            1.0 / (0..n)
                .filter(|&k| k != i)
                .map(|k| nodes[i] - nodes[k])
                .product::<f64>()
        })
        .collect();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..n {
        let d = t - nodes[i];
        if d == 0.0 {
            return values[i];
        }
        num += weights[i] * values[i] / d;
        den += weights[i] / d;
    }
    num / den
}
