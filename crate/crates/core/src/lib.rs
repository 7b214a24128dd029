//! Reconstruction of functions on the solid cylinder `B² × [-1, 1]` from
//! finite Radon projection data.
//!
//! Projections are line integrals over chords of horizontal slices. Data on
//! `2m+1` equally spaced directions, `2m` chords per direction and `2m`
//! slices feeds the operator `B_2m`. `B_2m` reproduces every polynomial of
//! total degree at most `2m - 1`, and its Lebesgue constant grows like
//! `m (log(m+1))²`.
//!
//! ```
//! use cylradon_core::{collect_projections, cylinder_operator_b2m, Phantom};
//!
//! let data = collect_projections(&Phantom::constant_one(), 2, 16).unwrap();
//! let v = cylinder_operator_b2m(&data, 0.3, -0.2, 0.5).unwrap();
//! assert!((v - 1.0).abs() < 1e-10);
//! ```

// `!(x <= bound)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod angles;
pub mod cheb;
pub mod dataset_io;
pub mod error;
pub mod format;
pub mod gauss_legendre;
pub mod kernel;
pub mod output;
pub mod phantom;
pub mod radon;
pub mod reconstruct;

pub use analysis::{
    convergence_experiment, growth_check, growth_law, lebesgue_norm_estimate, lebesgue_sum,
    lower_bound_point, ConvergenceRecord, GridSpec, GrowthReport, LebesgueEstimate,
    LebesgueEvaluator,
};
pub use angles::AngleSet;
pub use cheb::{
    chebyshev_t, chebyshev_t_tilde, chebyshev_u, nodes_first_kind, nodes_second_kind,
    quad_first_kind, quad_second_kind, QuadratureKind, QuadratureRule,
};
pub use dataset_io::{read_dataset, write_dataset};
pub use error::{Error, Result};
pub use gauss_legendre::GaussLegendre;
pub use kernel::{
    kernel_compact, kernel_direct, kernel_scale, lebesgue_cell, sigma, KernelEvaluation,
    KernelMethod, KernelPlan,
};
pub use phantom::{ClosedForm, Field, Phantom, Polynomial3};
pub use radon::{
    chord_point, collect_disk_projections, collect_projections, collect_projections_analytic,
    radon_numeric, radon_polynomial_exact, radon_ridge_analytic, Chord, DiskProjections,
    ProjectionDataset, Provenance,
};
pub use reconstruct::{
    cylinder_operator_b2m, disk_operator_a2m, reconstruct_grid, reference_partial_sum_s2m,
    EvaluationGrid, GridKind, PartialSumReference, ReconstructionMethod, ReconstructionResult,
    Reconstructor,
};
