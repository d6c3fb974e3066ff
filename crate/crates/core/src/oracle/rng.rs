//! SplitMix64 with Box–Muller normals.
//!
//! Fixed and fully specified so that instances can be regenerated from a
//! seed in any language:
//!
//! * `next_u64`: state += 0x9E3779B97F4A7C15, then the SplitMix64 finalizer.
//! * `next_f64`: top 53 bits of `next_u64` scaled by 2⁻⁵³, in `[0, 1)`.
//! * `normal_pair`: `u₁ = 1 − next_f64()`, `u₂ = next_f64()`,
//!   `r = √(−2 ln u₁)`, returns `(r cos 2πu₂, r sin 2πu₂)`.
//! * `substream(seed, index)`: seed of the independent stream used for the
//!   `index`-th draw of a batch, `mix(seed ^ mix(index + 0x9E3779B97F4A7C15))`.

use crate::quat::Quaternion;

pub const GENERATOR_ID: &str = "splitmix64+box-muller";

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn substream(seed: u64, index: u64) -> u64 {
    mix(seed ^ mix(index.wrapping_add(GOLDEN)))
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = std::f64::consts::TAU * u2;
        (r * t.cos(), r * t.sin())
    }

    pub fn normal3(&mut self) -> [f64; 3] {
        let (a, b) = self.normal_pair();
        let (c, _) = self.normal_pair();
        [a, b, c]
    }

    /// Uniform on the unit 3-sphere: four standard normals, normalized.
    pub fn unit_quaternion(&mut self) -> Quaternion {
        loop {
            let (a, b) = self.normal_pair();
            let (c, d) = self.normal_pair();
            let q = Quaternion::new(a, b, c, d);
            let n = q.norm();
            if n > 1e-300 {
                return q / n;
            }
        }
    }

    /// Uniform on the unit 2-sphere, as a pure quaternion.
    pub fn unit_pure(&mut self) -> Quaternion {
        loop {
            let q = Quaternion::pure(self.normal3());
            let n = q.norm();
            if n > 1e-300 {
                return q / n;
            }
        }
    }
}
