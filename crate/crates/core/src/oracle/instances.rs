//! Synthetic pairwise-similar observation pairs with a known attitude.

use std::fmt;
use std::str::FromStr;

use crate::oracle::rng::SplitMix64;
use crate::quat::{Quaternion, DEFAULT_TOL};
use crate::solver::ObservationPair;

/// Minimum `sin` of the angle between `a₁` and `a₂` in generic instances.
pub const MIN_GENERIC_SIN: f64 = 0.05;
/// Minimum observation modulus.
pub const MIN_MODULUS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// Random attitude, random nonparallel pure observations.
    Generic,
    /// `Im b₁ = −Im a₁`: the first square root is on its degenerate branch.
    AntipodalFirst,
    /// `q₁*(a₁ × a₂)q₁ = −(b₁ × b₂)` for the canonical `q₁`: the second
    /// square root is on its degenerate branch.
    AntipodalCross,
    /// `a₂` is an exact multiple of `a₁`.
    Collinear,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 4] = [
        InstanceKind::Generic,
        InstanceKind::AntipodalFirst,
        InstanceKind::AntipodalCross,
        InstanceKind::Collinear,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Generic => "generic",
            InstanceKind::AntipodalFirst => "antipodal_first",
            InstanceKind::AntipodalCross => "antipodal_cross",
            InstanceKind::Collinear => "collinear",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InstanceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown instance kind `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratedInstance {
    pub pair: ObservationPair,
    /// Unit attitude used to produce `b₁`, `b₂`.
    pub truth: Quaternion,
    pub kind: InstanceKind,
    pub seed: u64,
}

fn observation(rng: &mut SplitMix64) -> Quaternion {
    loop {
        let q = Quaternion::pure(rng.normal3());
        if q.norm() >= MIN_MODULUS {
            return q;
        }
    }
}

fn nonparallel_pair(rng: &mut SplitMix64) -> (Quaternion, Quaternion) {
    loop {
        let (a1, a2) = (observation(rng), observation(rng));
        if a1.im_cross(a2).norm() >= MIN_GENERIC_SIN * a1.norm() * a2.norm() {
            return (a1, a2);
        }
    }
}

/// `q*aq` for unit `q`.
fn rotate(q: Quaternion, a: Quaternion) -> Quaternion {
    let r = q.conj() * a * q;
    Quaternion::new(0.0, r.x, r.y, r.z)
}

/// Shortest-arc unit quaternion `r` with `r*ur = v` for equal-length `u`, `v`.
fn shortest_arc(u: Quaternion, v: Quaternion) -> Quaternion {
    let c = u.im_cross(v);
    let r = Quaternion::new(u.norm() * v.norm() + u.im_dot(v), -c.x, -c.y, -c.z);
    r / r.norm()
}

pub fn random_instance(seed: u64, kind: InstanceKind) -> GeneratedInstance {
    let mut rng = SplitMix64::new(seed);
    let (a1, a2, truth, b1) = match kind {
        InstanceKind::Generic => {
            let (a1, a2) = nonparallel_pair(&mut rng);
            let q = rng.unit_quaternion();
            (a1, a2, q, rotate(q, a1))
        }
        InstanceKind::AntipodalFirst => {
            let (a1, a2) = nonparallel_pair(&mut rng);
            // a half turn about an axis orthogonal to a₁ maps a₁ to −a₁
            let w = rng.unit_pure();
            let axis = a1.im_cross(w);
            let q = axis / axis.norm();
            (a1, a2, q, -a1)
        }
        InstanceKind::AntipodalCross => {
            let (a1, a2) = nonparallel_pair(&mut rng);
            let b1 = loop {
                let d = rng.unit_pure() * a1.norm();
                // keep the first factor off its own degenerate branch
                if (d + a1).norm() > 0.1 * a1.norm() {
                    break d;
                }
            };
            // canonical first factor followed by a half turn about b₁
            let q = shortest_arc(a1, b1) * (b1 / b1.norm());
            (a1, a2, q, b1)
        }
        InstanceKind::Collinear => {
            let a1 = observation(&mut rng);
            const FACTORS: [f64; 6] = [-4.0, -2.0, -0.5, 0.5, 2.0, 4.0];
            let f = FACTORS[(rng.next_u64() % FACTORS.len() as u64) as usize];
            let q = rng.unit_quaternion();
            (a1, a1 * f, q, rotate(q, a1))
        }
    };
    let b2 = rotate(truth, a2);
    let pair = ObservationPair::new(a1, a2, b1, b2, DEFAULT_TOL)
        .expect("generated observations are nonreal");
    GeneratedInstance { pair, truth, kind, seed }
}
