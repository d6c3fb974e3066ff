//! Davenport's q-method as an independent baseline.
//!
//! With the attitude profile matrix `B = Σ bₗ aₗᵀ`, `σ = tr B`,
//! `S = B + Bᵀ` and `z = Σ bₗ × aₗ`, the symmetric matrix
//!
//! ```text
//! K = | σ   zᵀ     |
//!     | z   S − σI |
//! ```
//!
//! satisfies `qᵀKq = Σ bₗ · (q*aₗq)` for unit `q = (w, x, y, z)`, so the
//! zero-cost (or least-cost) quaternion is its dominant eigenvector.

use crate::error::{Error, Result};
use crate::quat::Quaternion;

pub const MAX_ITERATIONS: usize = 500;
pub const RESIDUAL_TOL: f64 = 1e-13;
pub const SPECTRAL_GAP_TOL: f64 = 1e-9;

type Mat4 = [[f64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DavenportMatrix {
    pub entries: Mat4,
}

impl DavenportMatrix {
    /// Uses the imaginary parts of every observation.
    pub fn new(pairs: &[(Quaternion, Quaternion)]) -> Self {
        let mut b = [[0.0; 3]; 3];
        let mut z = [0.0; 3];
        for &(a, bq) in pairs {
            let (av, bv) = (a.vector(), bq.vector());
            for r in 0..3 {
                for c in 0..3 {
                    b[r][c] += bv[r] * av[c];
                }
            }
            let cr = bq.im().im_cross(a.im()).vector();
            for k in 0..3 {
                z[k] += cr[k];
            }
        }
        let sigma = b[0][0] + b[1][1] + b[2][2];
        let mut k = [[0.0; 4]; 4];
        k[0][0] = sigma;
        for r in 0..3 {
            k[0][r + 1] = z[r];
            k[r + 1][0] = z[r];
            for c in r..3 {
                let s = b[r][c] + b[c][r] - if r == c { sigma } else { 0.0 };
                k[r + 1][c + 1] = s;
                k[c + 1][r + 1] = s;
            }
        }
        Self { entries: k }
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        mat_vec(&self.entries, v)
    }

    pub fn quadratic_form(&self, q: Quaternion) -> f64 {
        dot(q.to_array(), self.apply(q.to_array()))
    }

    /// Gershgorin bound on the spectral radius.
    pub fn gershgorin_bound(&self) -> f64 {
        self.entries
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

fn dot(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &Mat4, v: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = dot(*row, v);
    }
    out
}

fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn max_abs(m: &Mat4) -> f64 {
    m.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn normalize(v: [f64; 4]) -> Option<[f64; 4]> {
    let n = dot(v, v).sqrt();
    (n > 0.0 && n.is_finite()).then(|| v.map(|x| x / n))
}

#[derive(Debug, Clone, Copy)]
struct Eigenpair {
    value: f64,
    vector: [f64; 4],
    iterations: usize,
}

/// Dominant eigenpair of a positive semidefinite `shifted` matrix.
///
/// Iteration `k` holds `shifted^(2^k)` as a normalized running square, so a
/// spectral ratio `r` contracts as `r^(2^k)`. Once the power stops changing
/// it is (a multiple of) the projector onto the dominant eigenspace, and its
/// column with the largest diagonal entry is taken as the eigenvector.
/// Convergence is then confirmed on the eigen-residual `|Kx − ρx|` of the
/// unshifted `target`.
fn power_iteration(shifted: &Mat4, target: &Mat4, scale: f64) -> Result<Eigenpair> {
    let m = max_abs(shifted);
    if m == 0.0 || !m.is_finite() {
        return Err(Error::NoConvergence { iterations: 0, residual: f64::NAN });
    }
    let mut op = shifted.map(|row| row.map(|v| v / m));
    for it in 1..=MAX_ITERATIONS {
        let sq = mat_mul(&op, &op);
        let m = max_abs(&sq);
        if m == 0.0 || !m.is_finite() {
            break;
        }
        let next = sq.map(|row| row.map(|v| v / m));
        let change = (0..16).map(|i| (next[i / 4][i % 4] - op[i / 4][i % 4]).abs()).fold(0.0, f64::max);
        op = next;
        if change > 1e-14 {
            continue;
        }
        let col = (0..4).max_by(|&a, &b| op[a][a].total_cmp(&op[b][b])).unwrap_or(0);
        let Some(x) = normalize([op[0][col], op[1][col], op[2][col], op[3][col]]) else {
            break;
        };
        let kx = mat_vec(target, x);
        let rho = dot(x, kx);
        let residual = (0..4).map(|i| (kx[i] - rho * x[i]).powi(2)).sum::<f64>().sqrt();
        if residual <= RESIDUAL_TOL * scale {
            return Ok(Eigenpair { value: rho, vector: x, iterations: it });
        }
        return Err(Error::NoConvergence { iterations: it, residual });
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: f64::NAN })
}

/// Top two eigenvalues and the dominant eigenvector of `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DavenportSolution {
    pub attitude: Quaternion,
    pub max_eigenvalue: f64,
    pub second_eigenvalue: f64,
    pub iterations: usize,
}

pub fn davenport_eigen(pairs: &[(Quaternion, Quaternion)]) -> Result<DavenportSolution> {
    let k = DavenportMatrix::new(pairs);
    let c = k.gershgorin_bound();
    let scale = c.max(1.0);
    let mut shifted = k.entries;
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] += c;
    }
    let top = power_iteration(&shifted, &k.entries, scale)?;

    // deflate: the shifted spectrum is nonnegative, so after removing the
    // dominant direction the next one dominates
    let mut deflated = shifted;
    let shift_top = top.value + c;
    for r in 0..4 {
        for col in 0..4 {
            deflated[r][col] -= shift_top * top.vector[r] * top.vector[col];
        }
    }
    let second = match power_iteration(&deflated, &deflated, scale) {
        Ok(e) => e.value,
        // a zero deflated operator means every remaining shifted eigenvalue is 0
        Err(_) => 0.0,
    };
    let second = second - c;
    let gap = top.value - second;
    if gap <= SPECTRAL_GAP_TOL * scale {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let v = top.vector;
    let q = Quaternion::new(v[0], v[1], v[2], v[3]);
    Ok(DavenportSolution {
        attitude: q.normalized()?.canonical_sign(),
        max_eigenvalue: top.value,
        second_eigenvalue: second,
        iterations: top.iterations,
    })
}

/// Unit, sign-canonical quaternion maximizing `qᵀKq`.
pub fn davenport_solve(pairs: &[(Quaternion, Quaternion)]) -> Result<Quaternion> {
    davenport_eigen(pairs).map(|s| s.attitude)
}
