//! Opt-in projection of noisy observations onto a pairwise-similar
//! configuration.
//!
//! This is an engineering convenience, not part of the exact theory: the
//! frame-B observations are modified so that a zero-cost attitude exists.
//! `Re bₗ` is set to `Re aₗ`, `|Im bₗ|` to `|Im aₗ|`, and `Im b₁`, `Im b₂` are
//! opened or closed symmetrically about their bisector until their angle
//! equals the angle between `Im a₁` and `Im a₂`. Callers must report that
//! this happened.

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::solver::ObservationPair;

pub fn precondition(pair: &ObservationPair, tol: f64) -> Result<ObservationPair> {
    let (u1, u2) = (pair.a1.im(), pair.a2.im());
    let (v1, v2) = (pair.b1.im(), pair.b2.im());
    let (n1, n2) = (v1.norm(), v2.norm());
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::Precondition("frame-B observation has no vector part"));
    }
    let (h1, h2) = (v1 / n1, v2 / n2);
    let bisector = h1 + h2;
    let spread = h1 - h2;
    let (bn, sn) = (bisector.norm(), spread.norm());
    if bn <= tol || sn <= tol {
        return Err(Error::Precondition("frame-B observations are parallel or antiparallel"));
    }
    let (m, d) = (bisector / bn, spread / sn);
    let target = u1.im_cross(u2).norm().atan2(u1.im_dot(u2));
    let (c, s) = ((0.5 * target).cos(), (0.5 * target).sin());
    let b1 = Quaternion::real(pair.a1.w) + (m * c + d * s) * u1.norm();
    let b2 = Quaternion::real(pair.a2.w) + (m * c - d * s) * u2.norm();
    ObservationPair::new(pair.a1, pair.a2, b1, b2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::DEFAULT_TOL;

    #[test]
    fn projects_onto_similar_pair() {
        let a1 = Quaternion::pure([1.0, 0.0, 0.0]);
        let a2 = Quaternion::pure([0.0, 2.0, 0.0]);
        let b1 = Quaternion::new(0.01, 0.0, 1.01, 0.02);
        let b2 = Quaternion::pure([-1.9, 0.1, 0.3]);
        let p = ObservationPair::new(a1, a2, b1, b2, DEFAULT_TOL).unwrap();
        assert!(!p.report.verdict);
        let q = precondition(&p, DEFAULT_TOL).unwrap();
        assert!(q.report.verdict, "{:?}", q.report);
        // bisector of the original pair is preserved
        let before = (b1.im() / b1.im_norm() + b2.im() / b2.im_norm()).normalized().unwrap();
        let after = (q.b1.im() / q.b1.im_norm() + q.b2.im() / q.b2.im_norm()).normalized().unwrap();
        assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn similar_input_is_a_fixed_point() {
        let p = ObservationPair::from_vectors([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], DEFAULT_TOL).unwrap();
        let q = precondition(&p, DEFAULT_TOL).unwrap();
        assert!((q.b1 - p.b1).norm() < 1e-15);
        assert!((q.b2 - p.b2).norm() < 1e-15);
    }

    #[test]
    fn parallel_frame_b_is_rejected() {
        let p = ObservationPair::from_vectors([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 3.0, 0.0], DEFAULT_TOL).unwrap();
        assert!(matches!(precondition(&p, DEFAULT_TOL), Err(Error::Precondition(_))));
    }
}
