//! Minkowski inverse of complex matrices under the metric
//! `G = diag(1, -1, ..., -1)`.
//!
//! The Minkowski inverse `A^m` of `A` (when it exists) is the unique `X` with
//! `AXA = A`, `XAX = X`, `(AX)~ = AX`, `(XA)~ = XA`, where `A~ = G_n A* G_m`.
//! The crate provides a self-contained dense kernel (Jacobi SVD, ranks,
//! generalized inverses, factorizations), existence diagnostics, several
//! independent algorithms for `A^m`, related inverse families and witnesses,
//! matrix-equation solvers, and a seeded verification oracle.
//!
//! ```
//! use mink_core::{fixtures, mink_inverse_frf, Tolerance};
//!
//! let a = fixtures::sample_5x5();
//! let x = mink_inverse_frf(&a, &Tolerance::default()).unwrap();
//! assert!(x.result.dist(&fixtures::sample_5x5_minv()) < 1e-10);
//! ```

pub mod error;
pub mod factor;
pub mod fixtures;
pub mod ginv;
pub mod io;
pub mod matrix;
pub mod metric;
pub mod minkowski;
pub mod projector;
pub mod rank;
pub mod solvers;
pub mod svd;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use factor::{full_rank_factorization, hs_decomposition, FullRankFactorization, HsDecomposition};
pub use ginv::{group_inverse, inv_shift_identity, inverse, moore_penrose, one_inverse_sample, penrose_residuals};
pub use matrix::{Matrix, C64};
pub use metric::{mink_adjoint, MinkowskiMetric};
pub use minkowski::{
    bjerhammar_witnesses, compose_13m_14m, compute, diagnose_existence, factorization_witnesses, mink_inverse_block,
    mink_inverse_frf, mink_inverse_group, mink_inverse_hs, mink_inverse_resolvent, mink_inverse_zlobec,
    mink_inverse_zlobec2, mink_residuals, moore_style_check, one_four_m, one_three_m, sylvester_witnesses, AlgoParams,
    Algorithm, ExistenceDiagnosis, InverseComputation,
};
pub use projector::projector_onto_along;
pub use rank::{index_of, index_with_scale, numerical_rank, rank, rank_with_scale, RankReport};
pub use solvers::{
    bc_parameterization, mink_rank_characterization, rank_equation_solve, solve_axb_d, solve_xay_b, GeneralSolution,
    RankEquationInstance,
};
pub use svd::{singular_values, svd, Svd};
pub use tolerance::Tolerance;
pub use verify::{check_candidate, cross_check, generate, CheckReport, CrossCheckReport, GenKind, GenSpec};
