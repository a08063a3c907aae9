//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` in row order and applies
//! the plane rotation that annihilates `a[p][q]`. Sweeps continue until the
//! off-diagonal Frobenius mass drops below `1e-13·‖M‖_F`. Convergence is
//! quadratic once the matrix is nearly diagonal, so the 64-sweep cap is never
//! reached for finite input in practice.

use super::matrix::{Matrix, SymMatrix};
use crate::error::{Error, Result};

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Relative gap below which two eigenvalues are treated as one group.
pub const GROUP_REL_TOL: f64 = 1e-9;

/// Spectral decomposition `M = Q·diag(values)·Qᵀ` with eigenvalues sorted
/// non-increasing and eigenvectors stored as the columns of `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomp {
    pub vectors: Matrix,
    pub values: Vec<f64>,
}

impl EigenDecomp {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// Rebuilds `Q·diag(f(λ))·Qᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        SymMatrix::from_spectrum(&self.vectors, &mapped)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        SymMatrix::from_spectrum(&self.vectors, &self.values)
    }

    /// Index ranges of eigenvalue clusters, in descending order. Consecutive
    /// eigenvalues within relative `GROUP_REL_TOL` belong to the same group;
    /// their eigenvector columns span the corresponding spectral projection.
    pub fn groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.values.len() {
            let split = i == self.values.len() || {
                let (a, b) = (self.values[start], self.values[i]);
                (a - b).abs() > GROUP_REL_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
            };
            if split {
                out.push(start..i);
                start = i;
            }
        }
        out
    }

    /// Orthogonal projection onto the eigenvectors with indices in `range`.
    pub fn projection(&self, range: std::ops::Range<usize>) -> SymMatrix {
        let weights: Vec<f64> = (0..self.dim()).map(|k| if range.contains(&k) { 1.0 } else { 0.0 }).collect();
        SymMatrix::from_spectrum(&self.vectors, &weights)
    }
}

/// PSD clamping tolerance `εₚ = 1e-10·(1 + ‖M‖_max)`.
pub fn psd_tolerance(m: &SymMatrix) -> f64 {
    1e-10 * (1.0 + m.max_abs())
}

pub fn eig_sym(m: &SymMatrix) -> Result<EigenDecomp> {
    let n = m.dim();
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }

    let mut a = m.to_matrix();
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * m.frobenius();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_mass(&a) > threshold {
        return Err(Error::NumericalFailure(format!("Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).total_cmp(&a.get(i, i)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok(EigenDecomp { vectors, values })
}

fn off_diagonal_mass(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j) * a.get(i, j);
            }
        }
    }
    s.sqrt()
}

/// Applies `A ← PᵀAP`, `V ← VP` for the rotation zeroing `a[p][q]`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    if apq == 0.0 {
        return;
    }
    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();

    for k in 0..n {
        let (akp, akq) = (a.get(k, p), a.get(k, q));
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    for k in 0..n {
        let (apk, aqk) = (a.get(p, k), a.get(q, k));
        a.set(p, k, c * apk - s * aqk);
        a.set(q, k, s * apk + c * aqk);
    }
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}
