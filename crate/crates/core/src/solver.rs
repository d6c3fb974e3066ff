//! Zero-cost solutions of the two-observation Wahba problem.
//!
//! A nonzero `q` has zero cost `Σ |q⁻¹aₗq − bₗ|²` exactly when the pairs
//! `(a₁, a₂)` and `(b₁, b₂)` are pairwise similar. All such `q` factor as
//! `q = q₁q₂` where
//!
//! ```text
//! q₁ = λ₁ √((Im a₁)(Im b₁)*) + μ₁ Im(a₁ + b₁)
//! q₂ = λ₂ √(q₁*(Im a₁ × Im a₂) q₁ (Im b₂ × Im b₁))
//! ```
//!
//! `q₁` aligns the first observation; `q₂` then turns about `b₁` until the
//! cross products agree. Each square root has a degenerate branch: `q₁`
//! when `Im a₁ = −Im b₁`, `q₂` when the rotated cross product is antipodal
//! to `Im b₁ × Im b₂`.

use crate::error::{Error, Result};
use crate::quat::{is_pairwise_similar, quat_sqrt_with_tol, Quaternion, SimilarityReport, SqrtResult};
use crate::sylvester::{sylvester_solve, SylvesterFamily};

/// Two frame-A and two frame-B observations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationPair {
    pub a1: Quaternion,
    pub a2: Quaternion,
    pub b1: Quaternion,
    pub b2: Quaternion,
    pub report: SimilarityReport,
}

impl ObservationPair {
    /// Fails with `NotNonreal` if any observation is real within tolerance.
    pub fn new(
        a1: Quaternion,
        a2: Quaternion,
        b1: Quaternion,
        b2: Quaternion,
        tol: f64,
    ) -> Result<Self> {
        let report = is_pairwise_similar(a1, a2, b1, b2, tol)?;
        Ok(Self { a1, a2, b1, b2, report })
    }

    pub fn from_vectors(a1: [f64; 3], a2: [f64; 3], b1: [f64; 3], b2: [f64; 3], tol: f64) -> Result<Self> {
        Self::new(
            Quaternion::pure(a1),
            Quaternion::pure(a2),
            Quaternion::pure(b1),
            Quaternion::pure(b2),
            tol,
        )
    }

    pub fn pairs(&self) -> [(Quaternion, Quaternion); 2] {
        [(self.a1, self.b1), (self.a2, self.b2)]
    }

    pub fn cost(&self, q: Quaternion) -> Result<f64> {
        wahba_cost(q, &self.pairs())
    }

    /// `|a₁|² + |a₂|²`, the natural magnitude of the cost.
    pub fn cost_scale(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr()
    }

    pub fn is_pure(&self) -> bool {
        [self.a1, self.a2, self.b1, self.b2].iter().all(|q| q.w == 0.0)
    }
}

/// `Σ |q⁻¹aₗq − bₗ|²` over any number of pairs. Invariant under real
/// scaling of `q`.
pub fn wahba_cost(q: Quaternion, pairs: &[(Quaternion, Quaternion)]) -> Result<f64> {
    let inv = q.inverse()?;
    Ok(pairs.iter().map(|&(a, b)| (inv * a * q - b).norm_sqr()).sum())
}

/// Drops the (matching) scalar parts; the cost is unchanged for every `q`.
pub fn reduce_to_pure(pair: &ObservationPair) -> Result<ObservationPair> {
    if !pair.report.verdict {
        return Err(Error::NotPairwiseSimilar(pair.report));
    }
    Ok(ObservationPair {
        a1: pair.a1.im(),
        a2: pair.a2.im(),
        b1: pair.b1.im(),
        b2: pair.b2.im(),
        report: pair.report,
    })
}

/// Unit, sign-canonical representative of a rotation quaternion.
pub fn canonicalize(q: Quaternion) -> Result<Quaternion> {
    Ok(q.normalized()?.canonical_sign())
}

/// Parameters selecting one member of a [`WahbaFamily`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemberParams {
    pub lambda1: f64,
    pub mu1: f64,
    /// Pure direction for `q₁` on the antipodal branch.
    pub q1_direction: Option<Quaternion>,
    /// Must be nonzero; its sign selects between the two `q₂` roots.
    pub lambda2: f64,
    /// Pure direction for `q₂` on its degenerate branch.
    pub q2_direction: Option<Quaternion>,
}

impl Default for MemberParams {
    fn default() -> Self {
        Self { lambda1: 1.0, mu1: 0.0, q1_direction: None, lambda2: 1.0, q2_direction: None }
    }
}

/// The second factor for a given `q₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct SecondFactor {
    sqrt_arg: Quaternion,
    sqrt: SqrtResult,
    antipodal: bool,
    /// `q₁*(a₁ × a₂)q₁`
    rotated_cross: Quaternion,
}

/// Every zero-cost quaternion of a pairwise-similar observation pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WahbaFamily {
    pub q1_family: SylvesterFamily,
    /// Canonical first factor, `(λ₁, μ₁) = (1, 0)`.
    pub q1: Quaternion,
    /// `q₁*(Im a₁ × Im a₂)q₁(Im b₂ × Im b₁)` for the canonical `q₁`.
    pub q2_sqrt_arg: Quaternion,
    /// `q₁*(Im a₁ × Im a₂)q₁ = −(Im b₁ × Im b₂)` within tolerance.
    pub q2_antipodal: bool,
    /// `q₁*(Im a₁ × Im a₂)q₁` when `q2_antipodal`, zero otherwise.
    pub q2_constraint_normal: Quaternion,
    /// Canonical second factor (unit modulus); `1` when collinear.
    pub q2: Quaternion,
    /// `Im a₁ × Im a₂ = 0` within tolerance.
    pub collinear: bool,
    /// Unit representative with nonnegative scalar part.
    pub canonical: Quaternion,
    /// `a₃ = q₁⁻¹(Im a₁ × Im a₂)q₁` for the canonical `q₁`.
    pub a3: Quaternion,
    /// `b₃ = Im b₁ × Im b₂`.
    pub b3: Quaternion,
    u1: Quaternion,
    u2: Quaternion,
    v1: Quaternion,
    v2: Quaternion,
    tol: f64,
}

/// Solves `Σ |q⁻¹aₗq − bₗ|² = 0` for two observations in closed form.
///
/// Collinear observations are not an error: the second pair adds no
/// constraint and the returned family is the Sylvester family of the
/// first alignment, flagged with `collinear = true`.
pub fn solve_two_obs(pair: &ObservationPair, tol: f64) -> Result<WahbaFamily> {
    let report = is_pairwise_similar(pair.a1, pair.a2, pair.b1, pair.b2, tol)?;
    if !report.verdict {
        return Err(Error::NotPairwiseSimilar(report));
    }
    let (u1, u2, v1, v2) = (pair.a1.im(), pair.a2.im(), pair.b1.im(), pair.b2.im());

    let q1_family = sylvester_solve(u1, v1, tol)?;
    let q1 = q1_family.canonical()?;
    let cross_a = u1.im_cross(u2);
    let b3 = v1.im_cross(v2);
    let a3 = q1.sandwich(cross_a)?;
    let collinear = cross_a.norm() <= tol * 1f64.max(u1.norm() * u2.norm());

    let mut family = WahbaFamily {
        q1_family,
        q1,
        q2_sqrt_arg: Quaternion::ZERO,
        q2_antipodal: false,
        q2_constraint_normal: Quaternion::ZERO,
        q2: Quaternion::ONE,
        collinear,
        canonical: Quaternion::ONE,
        a3,
        b3,
        u1,
        u2,
        v1,
        v2,
        tol,
    };

    if collinear {
        family.canonical = canonicalize(q1)?;
        return Ok(family);
    }

    let second = family.second_factor(q1)?;
    family.q2_sqrt_arg = second.sqrt_arg;
    family.q2_antipodal = second.antipodal;
    if second.antipodal {
        family.q2_constraint_normal = second.rotated_cross;
    }
    let q2 = family.second_member(&second, 1.0, None)?;
    family.q2 = q2.normalized()?;
    family.canonical = canonicalize(q1 * family.q2)?;
    Ok(family)
}

impl WahbaFamily {
    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// The pure observations the family was built from.
    pub fn reduced_observations(&self) -> [Quaternion; 4] {
        [self.u1, self.u2, self.v1, self.v2]
    }

    /// The designated representative: unit, nonnegative scalar part.
    pub fn canonicalize(&self) -> Result<Quaternion> {
        if self.collinear {
            canonicalize(self.q1)
        } else {
            canonicalize(self.q1 * self.q2)
        }
    }

    fn second_factor(&self, q1: Quaternion) -> Result<SecondFactor> {
        let rotated_cross = q1.conj() * self.u1.im_cross(self.u2) * q1;
        let sqrt_arg = rotated_cross * self.v2.im_cross(self.v1);
        let sqrt = quat_sqrt_with_tol(sqrt_arg, self.tol)?;
        let antipodal = sqrt_arg.w < 0.0 && sqrt_arg.im_norm() <= self.tol * sqrt_arg.norm();
        Ok(SecondFactor { sqrt_arg, sqrt, antipodal, rotated_cross })
    }

    /// `q₂ = λ₂ √(...)`, with the scale chosen so that `λ₂ = 1` gives a unit
    /// quaternion.
    ///
    /// On the degenerate branch the root must also commute with `Im b₁`
    /// (that is what keeps the first alignment intact), so a requested
    /// direction is projected onto `Im b₁`, which lies in the plane
    /// orthogonal to `q₁*(Im a₁ × Im a₂)q₁`.
    fn second_member(
        &self,
        second: &SecondFactor,
        lambda2: f64,
        direction: Option<Quaternion>,
    ) -> Result<Quaternion> {
        if lambda2 == 0.0 {
            return Err(Error::DegenerateParameters);
        }
        if !second.antipodal {
            let root = match second.sqrt {
                SqrtResult::Roots { root, .. } => root,
                // exactly negative real; handled by the antipodal test above
                SqrtResult::NegativeReal { .. } => unreachable!("negative real is always antipodal"),
            };
            return Ok(root * (lambda2 / root.norm()));
        }
        let axis = self.v1.normalized()?;
        let d = direction.unwrap_or(axis);
        let dn = d.norm();
        if dn == 0.0 {
            return Err(Error::DegenerateParameters);
        }
        let along = d.im_dot(axis);
        if along.abs() <= self.tol * dn {
            return Err(Error::ConstraintViolated);
        }
        Ok(axis * (lambda2 * along.signum()))
    }

    /// Second factor belonging to an arbitrary member `q₁` of the first family.
    pub fn second_factor_for(
        &self,
        q1: Quaternion,
        lambda2: f64,
        direction: Option<Quaternion>,
    ) -> Result<Quaternion> {
        if self.collinear {
            return Err(Error::CollinearObservations);
        }
        let second = self.second_factor(q1)?;
        self.second_member(&second, lambda2, direction)
    }

    /// One member `q₁q₂` of the zero-cost set. For collinear observations
    /// this is `λ₂·q₁`.
    pub fn sample(&self, params: &MemberParams) -> Result<Quaternion> {
        let q1 = self.q1_family.sample(params.lambda1, params.mu1, params.q1_direction)?;
        if self.collinear {
            if params.lambda2 == 0.0 {
                return Err(Error::DegenerateParameters);
            }
            return Ok(q1 * params.lambda2);
        }
        let q2 = self.second_factor_for(q1, params.lambda2, params.q2_direction)?;
        Ok(q1 * q2)
    }
}
