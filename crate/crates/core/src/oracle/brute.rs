//! Exhaustive random search over unit quaternions.

use crate::batch::Execution;
use crate::oracle::rng::{substream, SplitMix64};
use crate::quat::Quaternion;
use crate::solver::wahba_cost;

/// The 24 Hurwitz units: `±1, ±i, ±j, ±k` and `(±1 ± i ± j ± k)/2`.
pub fn hurwitz_units() -> [Quaternion; 24] {
    let mut out = [Quaternion::ZERO; 24];
    let mut n = 0;
    for axis in 0..4 {
        for s in [1.0, -1.0] {
            let mut c = [0.0; 4];
            c[axis] = s;
            out[n] = Quaternion::from_array(c);
            n += 1;
        }
    }
    for bits in 0..16u32 {
        let c: [f64; 4] = std::array::from_fn(|k| if bits >> k & 1 == 1 { -0.5 } else { 0.5 });
        out[n] = Quaternion::from_array(c);
        n += 1;
    }
    out
}

fn candidate(seed: u64, index: u64) -> Quaternion {
    SplitMix64::new(substream(seed, index)).unit_quaternion()
}

/// Lowest-cost quaternion among the Hurwitz units and `n_samples` uniform
/// random unit quaternions.
///
/// Sample `i` is drawn from its own substream, and ties are broken by the
/// lower index, so the result does not depend on how work is scheduled.
pub fn brute_force_min(pairs: &[(Quaternion, Quaternion)], n_samples: usize, seed: u64) -> (Quaternion, f64) {
    brute_force_min_with(pairs, n_samples, seed, Execution::default())
}

pub fn brute_force_min_with(
    pairs: &[(Quaternion, Quaternion)],
    n_samples: usize,
    seed: u64,
    exec: Execution,
) -> (Quaternion, f64) {
    let eval = |q: Quaternion| wahba_cost(q, pairs).unwrap_or(f64::INFINITY);
    let better = |a: (f64, usize), b: (f64, usize)| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a };

    let units = hurwitz_units();
    let mut best = (f64::INFINITY, usize::MAX);
    for (k, q) in units.iter().enumerate() {
        best = better(best, (eval(*q), k));
    }
    let offset = units.len();
    let sampled = crate::batch::min_by_index(n_samples, exec, |i| (eval(candidate(seed, i as u64)), i + offset), better);
    if let Some(s) = sampled {
        best = better(best, s);
    }

    let q = if best.1 < offset { units[best.1] } else { candidate(seed, (best.1 - offset) as u64) };
    (q, best.0)
}
