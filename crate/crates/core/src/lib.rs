//! Closed-form zero-cost attitudes for two vector observations.
//!
//! Given frame-A observations `a₁, a₂` and frame-B observations `b₁, b₂`
//! as quaternions, [`solve_two_obs`] returns every nonzero `q` with
//! `Σ |q⁻¹aₗq − bₗ|² = 0`, built from quaternion square roots and the
//! singular Sylvester equation `a q = q b`. The [`oracle`] module carries
//! an eigendecomposition baseline and a brute-force sampler for
//! cross-checking.

pub mod batch;
pub mod error;
pub mod oracle;
pub mod precondition;
pub mod quat;
pub mod solver;
pub mod sylvester;

pub use batch::Execution;
pub use error::{Error, Result};
pub use quat::{
    conjugate_by, is_pairwise_similar, is_similar, quat_inverse, quat_mul, quat_sqrt, quat_sqrt_with_tol,
    rotation_angle_between, Quaternion, SimilarityReport, SqrtResult, DEFAULT_TOL,
};
pub use solver::{canonicalize, reduce_to_pure, solve_two_obs, wahba_cost, MemberParams, ObservationPair, WahbaFamily};
pub use sylvester::{family_sample, sylvester_solve, SylvesterFamily};
