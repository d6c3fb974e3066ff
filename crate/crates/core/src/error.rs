use thiserror::Error;

use crate::quat::SimilarityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,

    #[error("quaternion component is not finite")]
    NonFinite,

    #[error("quaternion is real within tolerance; a nonreal quaternion is required")]
    NotNonreal,

    #[error("quaternions are not similar (scalar residual {:.3e}, modulus residual {:.3e})", .0.scalar_residual, .0.modulus_residual)]
    NotSimilar(SimilarityReport),

    #[error("observation pairs are not pairwise similar; no zero-cost quaternion exists")]
    NotPairwiseSimilar(SimilarityReport),

    #[error("family parameters produce the zero quaternion")]
    DegenerateParameters,

    #[error("sample direction violates the family orthogonality constraint")]
    ConstraintViolated,

    #[error("observations are collinear; the second factor is unconstrained")]
    CollinearObservations,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("top two eigenvalues are within {gap:.3e}; attitude is ambiguous")]
    DegenerateSpectrum { gap: f64 },

    #[error("preconditioning failed: {0}")]
    Precondition(&'static str),
}

impl Error {
    /// True for failures caused by numerics rather than by infeasible input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::DegenerateSpectrum { .. } | Error::Precondition(_)
        )
    }
}
