//! The homogeneous singular Sylvester equation `a q − q b = 0`.
//!
//! For similar nonreal `a`, `b` every nonzero solution has the form
//! `q = λ √((Im a)(Im b)*) + μ Im(a + b)`. When `Im a = −Im b` the square
//! root degenerates to the whole plane of pure quaternions orthogonal to
//! `Im a`, and the `μ` term vanishes.

use crate::error::{Error, Result};
use crate::quat::{is_similar, quat_sqrt_with_tol, Quaternion, SqrtResult};

/// Symbolic solution set of `a q = q b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterFamily {
    /// Canonical "+" root of `(Im a)(Im b)*`; zero on the antipodal branch.
    pub sqrt_part: Quaternion,
    /// Modulus of any square root of `(Im a)(Im b)*`.
    pub sqrt_magnitude: f64,
    /// `Im(a + b)`; exactly zero on the antipodal branch.
    pub sum_part: Quaternion,
    /// `Im a = −Im b` within tolerance.
    pub antipodal: bool,
    /// `Im a` when antipodal (members must be pure and orthogonal to it), zero otherwise.
    pub constraint_normal: Quaternion,
    pub tol: f64,
}

/// Unit pure quaternion orthogonal to `v`: `v` crossed with the coordinate
/// axis least aligned with it (first axis on ties).
pub fn orthogonal_direction(v: Quaternion) -> Result<Quaternion> {
    let c = v.vector().map(f64::abs);
    let mut axis = 0;
    for k in 1..3 {
        if c[k] < c[axis] {
            axis = k;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    v.im_cross(Quaternion::pure(e)).normalized()
}

pub fn sylvester_solve(a: Quaternion, b: Quaternion, tol: f64) -> Result<SylvesterFamily> {
    let report = is_similar(a, b, tol)?;
    if !report.verdict {
        return Err(Error::NotSimilar(report));
    }
    let (u, v) = (a.im(), b.im());
    let sum = u + v;

    let antipodal = |magnitude: f64| SylvesterFamily {
        sqrt_part: Quaternion::ZERO,
        sqrt_magnitude: magnitude,
        sum_part: Quaternion::ZERO,
        antipodal: true,
        constraint_normal: u,
        tol,
    };

    if sum.norm() <= tol * report.scale {
        return Ok(antipodal((u.norm() * v.norm()).sqrt()));
    }
    match quat_sqrt_with_tol(u * v.conj(), tol)? {
        SqrtResult::NegativeReal { magnitude } => Ok(antipodal(magnitude)),
        SqrtResult::Roots { root, .. } => Ok(SylvesterFamily {
            sqrt_part: root,
            sqrt_magnitude: root.norm(),
            sum_part: sum,
            antipodal: false,
            constraint_normal: Quaternion::ZERO,
            tol,
        }),
    }
}

impl SylvesterFamily {
    /// Evaluates `λ·sqrt_part + μ·sum_part`.
    ///
    /// On the antipodal branch the square-root term is replaced by
    /// `λ·sqrt_magnitude·d/|d|` for a pure `direction` orthogonal to
    /// `constraint_normal`; `None` selects [`orthogonal_direction`]. Off the
    /// antipodal branch `direction` is ignored.
    pub fn sample(&self, lambda: f64, mu: f64, direction: Option<Quaternion>) -> Result<Quaternion> {
        if lambda.abs() + (mu * self.sum_part.norm()).abs() == 0.0 {
            return Err(Error::DegenerateParameters);
        }
        if !self.antipodal {
            return Ok(self.sqrt_part * lambda + self.sum_part * mu);
        }
        let d = match direction {
            Some(d) => {
                let n = d.norm();
                if n == 0.0 {
                    return Err(Error::DegenerateParameters);
                }
                let normal = self.constraint_normal;
                if d.w.abs() > self.tol * n
                    || d.im_dot(normal).abs() > self.tol * n * normal.norm()
                {
                    return Err(Error::ConstraintViolated);
                }
                d.im() / n
            }
            None => orthogonal_direction(self.constraint_normal)?,
        };
        Ok(d * (lambda * self.sqrt_magnitude))
    }

    /// The canonical member `(λ, μ) = (1, 0)`.
    pub fn canonical(&self) -> Result<Quaternion> {
        self.sample(1.0, 0.0, None)
    }

    /// Residual `|a q − q b|` of a candidate solution.
    pub fn residual(a: Quaternion, b: Quaternion, q: Quaternion) -> f64 {
        (a * q - q * b).norm()
    }
}

/// Free-function form of [`SylvesterFamily::sample`].
pub fn family_sample(
    f: &SylvesterFamily,
    lambda: f64,
    mu: f64,
    direction: Option<Quaternion>,
) -> Result<Quaternion> {
    f.sample(lambda, mu, direction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::DEFAULT_TOL;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    fn close(a: Quaternion, b: Quaternion) -> bool {
        (a - b).norm() <= 1e-14
    }

    #[test]
    fn commutant_of_i() {
        let f = sylvester_solve(I, I, DEFAULT_TOL).unwrap();
        assert!(!f.antipodal);
        assert!(close(f.sqrt_part, ONE));
        assert_eq!(f.sum_part, I * 2.0);
        assert!(close(f.sample(1.0, 0.0, None).unwrap(), ONE));
    }

    #[test]
    fn i_to_j() {
        let f = sylvester_solve(I, J, DEFAULT_TOL).unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(f.sqrt_part, Quaternion::new(h, 0.0, 0.0, -h)));
        assert_eq!(f.sum_part, I + J);
        let q = ONE - K + I + J;
        assert!(close(I * q, q * J));
        let s = f.sample(2f64.sqrt(), 0.0, None).unwrap();
        assert!(close(s, ONE - K));
        assert!(close(I * (ONE - K), (ONE - K) * J));
    }

    #[test]
    fn antipodal_plane() {
        let f = sylvester_solve(I, -I, DEFAULT_TOL).unwrap();
        assert!(f.antipodal);
        assert_eq!(f.sum_part, Quaternion::ZERO);
        assert_eq!(f.constraint_normal, I);
        let q = f.sample(1.0, 0.0, Some(J)).unwrap();
        assert_eq!(q, J);
        assert!(close(I * q, q * -I));
        assert_eq!(f.sample(1.0, 0.0, Some(I + J)), Err(Error::ConstraintViolated));
        assert_eq!(f.sample(1.0, 0.0, Some(ONE + K)), Err(Error::ConstraintViolated));
        assert_eq!(f.sample(0.0, 3.0, Some(J)), Err(Error::DegenerateParameters));
    }

    #[test]
    fn shared_scalar_part_is_ignored() {
        let a = Quaternion::new(2.0, 0.0, 3.0, 4.0);
        let b = Quaternion::new(2.0, 5.0, 0.0, 0.0);
        let f = sylvester_solve(a, b, DEFAULT_TOL).unwrap();
        for (l, m) in [(1.0, 0.0), (0.0, 1.0), (-2.0, 0.5)] {
            let q = f.sample(l, m, None).unwrap();
            assert!(SylvesterFamily::residual(a, b, q) <= 1e-13 * a.norm() * q.norm());
        }
    }

    #[test]
    fn degenerate_parameters() {
        let f = sylvester_solve(I, J, DEFAULT_TOL).unwrap();
        assert_eq!(f.sample(0.0, 0.0, None), Err(Error::DegenerateParameters));
    }

    #[test]
    fn dissimilar_and_real_inputs() {
        assert!(matches!(sylvester_solve(I, J * 2.0, DEFAULT_TOL), Err(Error::NotSimilar(_))));
        assert!(matches!(sylvester_solve(ONE + I, J, DEFAULT_TOL), Err(Error::NotSimilar(_))));
        assert_eq!(sylvester_solve(ONE, ONE, DEFAULT_TOL), Err(Error::NotNonreal));
    }

    #[test]
    fn orthogonal_direction_picks_least_aligned_axis() {
        assert_eq!(orthogonal_direction(I).unwrap(), K);
        let v = Quaternion::pure([0.1, 2.0, -3.0]);
        let d = orthogonal_direction(v).unwrap();
        assert!(d.im_dot(v).abs() < 1e-15);
        assert!((d.norm() - 1.0).abs() < 1e-15);
        assert_eq!(orthogonal_direction(Quaternion::ZERO), Err(Error::ZeroQuaternion));
    }
}
