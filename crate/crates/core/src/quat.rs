//! Quaternion algebra over `f64`.
//!
//! Scalar-first convention `w + x i + y j + z k`. Besides the usual
//! arithmetic this module hosts the square root and the similarity
//! predicates that every solver in the crate is gated on.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default relative tolerance for every predicate in the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

// ── Constructors ─────────────────────────────────────────────────────

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Checked constructor; rejects NaN and infinities.
    pub fn try_new(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let q = Self::new(w, x, y, z);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Pure quaternion from a 3-vector.
    #[inline]
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

// ── Parts, norms, conjugation ────────────────────────────────────────

impl Quaternion {
    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Scalar part `Re q`.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `Im q` as a pure quaternion.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`, computed without intermediate overflow.
    pub fn norm(self) -> f64 {
        let m = self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs());
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        let s = self / m;
        m * s.norm_sqr().sqrt()
    }

    /// Modulus of the imaginary part.
    pub fn im_norm(self) -> f64 {
        self.im().norm()
    }

    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        if !n2.is_finite() {
            let n = self.norm();
            return Ok(((self / n).conj()) / n);
        }
        Ok(self.conj() / n2)
    }

    pub fn normalized(self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self / n)
    }

    /// Euclidean inner product of the four components.
    #[inline]
    pub fn dot4(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Dot product of the imaginary parts.
    #[inline]
    pub fn im_dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product of the imaginary parts, returned as a pure quaternion.
    #[inline]
    pub fn im_cross(self, other: Self) -> Self {
        Self::new(
            0.0,
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// `q⁻¹ a q` with `self` as `q`.
    pub fn sandwich(self, a: Self) -> Result<Self> {
        Ok(self.inverse()? * a * self)
    }

    /// Representative of `{q, -q}`: nonnegative scalar part, ties at zero
    /// broken by the first nonzero imaginary component being positive.
    pub fn canonical_sign(self) -> Self {
        let t = 8.0 * f64::EPSILON * self.norm();
        let lead = [self.w, self.x, self.y, self.z]
            .into_iter()
            .find(|c| c.abs() > t)
            .unwrap_or(0.0);
        if lead < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Largest componentwise difference after aligning the sign of `other`.
    pub fn sign_aligned_distance(self, other: Self) -> f64 {
        let d_plus = (self - other).norm();
        let d_minus = (self + other).norm();
        d_plus.min(d_minus)
    }
}

/// Rotation angle (radians) between the rotations represented by two
/// nonzero quaternions, insensitive to the sign of either.
pub fn rotation_angle_between(p: Quaternion, q: Quaternion) -> Result<f64> {
    let p = p.normalized()?;
    let q = q.normalized()?;
    let q = if p.dot4(q) < 0.0 { -q } else { q };
    Ok(4.0 * (p - q).norm().atan2((p + q).norm()))
}

// ── Operators ────────────────────────────────────────────────────────

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let a = self;
        Self::new(
            a.w * r.w - a.x * r.x - a.y * r.y - a.z * r.z,
            a.w * r.x + a.x * r.w + a.y * r.z - a.z * r.y,
            a.w * r.y - a.x * r.z + a.y * r.w + a.z * r.x,
            a.w * r.z + a.x * r.y - a.y * r.x + a.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

// ── Free-function surface ────────────────────────────────────────────

#[inline]
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

#[inline]
pub fn quat_inverse(a: Quaternion) -> Result<Quaternion> {
    a.inverse()
}

/// `q⁻¹ a q`. Preserves `Re a` and `|a|`; for unit `q` and pure `a` it
/// rotates the vector part.
#[inline]
pub fn conjugate_by(q: Quaternion, a: Quaternion) -> Result<Quaternion> {
    q.sandwich(a)
}

// ── Square root ──────────────────────────────────────────────────────

/// Solutions of `q² = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SqrtResult {
    /// The two isolated roots `±root`; `root` has nonnegative scalar part.
    /// `near_branch` is the ambiguity warning raised when `a` lies within
    /// tolerance of the negative real axis.
    Roots { root: Quaternion, near_branch: bool },
    /// `a` is a negative real: every pure quaternion of modulus
    /// `magnitude` is a root.
    NegativeReal { magnitude: f64 },
}

impl SqrtResult {
    pub fn is_negative_real_branch(&self) -> bool {
        matches!(self, SqrtResult::NegativeReal { .. })
    }

    pub fn near_branch_warning(&self) -> bool {
        matches!(self, SqrtResult::Roots { near_branch: true, .. })
    }

    /// The "+" root of the isolated branch.
    pub fn principal(&self) -> Option<Quaternion> {
        match *self {
            SqrtResult::Roots { root, .. } => Some(root),
            SqrtResult::NegativeReal { .. } => None,
        }
    }

    pub fn roots(&self) -> Option<[Quaternion; 2]> {
        self.principal().map(|r| [r, -r])
    }

    pub fn magnitude(&self) -> f64 {
        match *self {
            SqrtResult::Roots { root, .. } => root.norm(),
            SqrtResult::NegativeReal { magnitude } => magnitude,
        }
    }

    /// A member of the negative-real family pointing along the imaginary
    /// part of `direction`. For isolated roots returns the principal root.
    pub fn member(&self, direction: Quaternion) -> Result<Quaternion> {
        match *self {
            SqrtResult::Roots { root, .. } => Ok(root),
            SqrtResult::NegativeReal { magnitude } => {
                let d = direction.im();
                let n = d.norm();
                if n == 0.0 {
                    return Err(Error::DegenerateParameters);
                }
                Ok(d * (magnitude / n))
            }
        }
    }
}

/// Square roots of a nonzero quaternion, with the default tolerance used
/// for the near-branch warning.
pub fn quat_sqrt(a: Quaternion) -> Result<SqrtResult> {
    quat_sqrt_with_tol(a, DEFAULT_TOL)
}

/// `q = ±√|a| · p/|p|` with `p = a + |a|`.
///
/// `Re p = |a| + Re a` cancels catastrophically when `a` approaches the
/// negative real axis; there it is evaluated as `|Im a|² / (|a| − Re a)`,
/// which is exact in real arithmetic and keeps full relative accuracy.
pub fn quat_sqrt_with_tol(a: Quaternion, tol: f64) -> Result<SqrtResult> {
    let n = a.norm();
    if n == 0.0 {
        return Err(Error::ZeroQuaternion);
    }
    let v = a.im();
    let vn = v.norm();
    if a.w < 0.0 && vn == 0.0 {
        return Ok(SqrtResult::NegativeReal { magnitude: n.sqrt() });
    }
    let s = if a.w >= 0.0 {
        n + a.w
    } else {
        // vn / (n - w) * vn avoids underflow of vn²
        vn / (n - a.w) * vn
    };
    let p = Quaternion::new(s, v.x, v.y, v.z);
    let root = (p * (n.sqrt() / p.norm())).canonical_sign();
    Ok(SqrtResult::Roots {
        root,
        near_branch: a.w < 0.0 && vn <= tol * n,
    })
}

// ── Similarity ───────────────────────────────────────────────────────

/// Residuals behind a (pairwise) similarity verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityReport {
    /// `|Re a − Re b|`, maximum over the compared pairs.
    pub scalar_residual: f64,
    /// `||a| − |b||`, maximum over the compared pairs.
    pub modulus_residual: f64,
    /// `|Re(a₁a₂) − Re(b₁b₂)|`; only set by the pairwise check.
    pub inner_residual: Option<f64>,
    pub tolerance_used: f64,
    /// `max(1, involved moduli)`; residuals are compared to `tolerance_used * scale`.
    pub scale: f64,
    pub verdict: bool,
}

impl SimilarityReport {
    fn new(scalar: f64, modulus: f64, inner: Option<f64>, tol: f64, scale: f64) -> Self {
        let bound = tol * scale;
        let verdict =
            scalar <= bound && modulus <= bound && inner.is_none_or(|r| r <= bound);
        Self {
            scalar_residual: scalar,
            modulus_residual: modulus,
            inner_residual: inner,
            tolerance_used: tol,
            scale,
            verdict,
        }
    }
}

fn require_nonreal(q: Quaternion, bound: f64) -> Result<()> {
    if q.im_norm() > bound {
        Ok(())
    } else {
        Err(Error::NotNonreal)
    }
}

/// `a ∼ b` iff `Re a = Re b` and `|a| = |b|`.
pub fn is_similar(a: Quaternion, b: Quaternion, tol: f64) -> Result<SimilarityReport> {
    let (na, nb) = (a.norm(), b.norm());
    let scale = 1f64.max(na).max(nb);
    require_nonreal(a, tol * scale)?;
    require_nonreal(b, tol * scale)?;
    Ok(SimilarityReport::new((a.w - b.w).abs(), (na - nb).abs(), None, tol, scale))
}

/// `(a₁, a₂) ∼ (b₁, b₂)` iff `a₁ ∼ b₁`, `a₂ ∼ b₂` and `Re(a₁a₂) = Re(b₁b₂)`.
pub fn is_pairwise_similar(
    a1: Quaternion,
    a2: Quaternion,
    b1: Quaternion,
    b2: Quaternion,
    tol: f64,
) -> Result<SimilarityReport> {
    let [na1, na2, nb1, nb2] = [a1, a2, b1, b2].map(Quaternion::norm);
    let scale = [na1, na2, nb1, nb2, na1 * na2, nb1 * nb2]
        .into_iter()
        .fold(1.0, f64::max);
    for q in [a1, a2, b1, b2] {
        require_nonreal(q, tol * scale)?;
    }
    let scalar = (a1.w - b1.w).abs().max((a2.w - b2.w).abs());
    let modulus = (na1 - nb1).abs().max((na2 - nb2).abs());
    let inner = ((a1 * a2).w - (b1 * b2).w).abs();
    Ok(SimilarityReport::new(scalar, modulus, Some(inner), tol, scale))
}
