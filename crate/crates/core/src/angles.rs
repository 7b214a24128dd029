use std::f64::consts::PI;

use crate::error::{Error, Result};

/// All discretization angles and nodes for a given `m`.
///
/// * `phi[ν] = 2πν/(2m+1)`, `ν = 0..=2m`: projection directions
/// * `theta[j-1] = jπ/(2m+1)`, `j = 1..=2m`: chord offsets `t = cos θ_j`
/// * `gamma[l] = (2l+1)π/(4m)`, `l = 0..2m`: slice angles, `z_l = cos γ_l`
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSet {
    pub m: usize,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub z_nodes: Vec<f64>,
}

impl AngleSet {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let n = 2 * m;
        let phi = (0..=n)
            .map(|nu| 2.0 * PI * nu as f64 / (n + 1) as f64)
            .collect();
        let theta = (1..=n).map(|j| j as f64 * PI / (n + 1) as f64).collect();
        let gamma: Vec<f64> = (0..n)
            .map(|l| (2 * l + 1) as f64 * PI / (2 * n) as f64)
            .collect();
        let z_nodes = gamma.iter().map(|g| g.cos()).collect();
        Ok(Self {
            m,
            phi,
            theta,
            gamma,
            z_nodes,
        })
    }

    /// Number of directions, `2m + 1`.
    pub fn n_directions(&self) -> usize {
        2 * self.m + 1
    }

    /// Number of chords per direction and of z-slices, `2m`.
    pub fn n_nodes(&self) -> usize {
        2 * self.m
    }

    /// `sin θ_j` for 1-based `j`.
    pub fn sin_theta(&self, j: usize) -> f64 {
        self.theta[j - 1].sin()
    }

    pub(crate) fn check_indices(&self, nu: usize, j: usize, l: usize) -> Result<()> {
        let n = self.n_nodes();
        if nu > n {
            return Err(Error::IndexOutOfRange {
                name: "nu",
                index: nu,
                bound: n + 1,
            });
        }
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                name: "j",
                index: j,
                bound: n + 1,
            });
        }
        if l >= n {
            return Err(Error::IndexOutOfRange {
                name: "l",
                index: l,
                bound: n,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_ranges() {
        for m in [1, 2, 5] {
            let a = AngleSet::new(m).unwrap();
            assert_eq!(a.phi.len(), 2 * m + 1);
            assert_eq!(a.theta.len(), 2 * m);
            assert_eq!(a.gamma.len(), 2 * m);
            assert!(a.theta.iter().chain(&a.gamma).all(|&v| v > 0.0 && v < PI));
            assert!(a.z_nodes.windows(2).all(|w| w[0] > w[1]));
        }
        assert!(AngleSet::new(0).is_err());
    }

    #[test]
    fn matches_chebyshev_nodes() {
        let a = AngleSet::new(3).unwrap();
        assert_eq!(a.z_nodes, crate::cheb::nodes_first_kind(6));
        let t: Vec<f64> = a.theta.iter().map(|t| t.cos()).collect();
        assert_eq!(t, crate::cheb::nodes_second_kind(6));
    }

    #[test]
    fn index_checks() {
        let a = AngleSet::new(1).unwrap();
        assert!(a.check_indices(2, 2, 1).is_ok());
        assert!(a.check_indices(3, 1, 0).is_err());
        assert!(a.check_indices(0, 0, 0).is_err());
        assert!(a.check_indices(0, 3, 0).is_err());
        assert!(a.check_indices(0, 1, 2).is_err());
    }
}
