//! Numerical attempt at the two-naive-means inverse problem
//!
//! ```text
//! ((A^p + B^p)/2)^{1/p} = X,   ((A^q + B^q)/2)^{1/q} = Y,   1/2 ≤ p ≤ 1 ≤ q.
//! ```
//!
//! Substituting `A^p = P + W`, `B^p = P − W` with `P = X^p` makes the first
//! equation hold identically and leaves
//!
//! ```text
//! F(W) = ((P + W)^s + (P − W)^s)/2 − Y^q = 0,   s = q/p,
//! ```
//!
//! over symmetric `W` with `−P ≤ W ≤ P`. The explorer starts from the
//! commuting approximation (solve the scalar problem per eigen-direction
//! of `X`) and refines with damped Gauss–Newton steps, using the exact
//! Fréchet derivative of `M ↦ M^s` (divided differences in the eigenbasis).
//! No existence claim is made: the status is `Solved` only when both
//! reconstructed residuals are below `1e-8·(1 + ‖X‖ + ‖Y‖)`.

use super::{check_same_dim, InverseSolution, LOEWNER_TOL};
use crate::error::{Error, Result};
use crate::linalg::{apply_fun, eig_sym, is_loewner_leq, require_spd, EigenDecomp, Matrix, ScalarFunction, SymMatrix};
use crate::means::naive_power_mean;
use crate::scalar::{gamma_of, invert_phi};

/// Newton-type steps continue until the residuals drop below this fraction
/// of the acceptance bound, or until a step stops improving.
const POLISH: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExploreStatus {
    Solved,
    NotSolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExploreOutcome {
    pub status: ExploreStatus,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub residual_x: f64,
    pub residual_y: f64,
    pub iterations: usize,
}

struct Problem {
    p: f64,
    q: f64,
    s: f64,
    base: SymMatrix,
    target: SymMatrix,
    x: SymMatrix,
    y: SymMatrix,
    bound: f64,
}

impl Problem {
    fn split(&self, w: &SymMatrix) -> (SymMatrix, SymMatrix) {
        (&self.base + w, &self.base - w)
    }

    fn feasible(&self, w: &SymMatrix) -> Result<bool> {
        let (plus, minus) = self.split(w);
        Ok(eig_sym(&plus)?.min() >= 0.0 && eig_sym(&minus)?.min() >= 0.0)
    }

    fn equation(&self, w: &SymMatrix) -> Result<SymMatrix> {
        let (plus, minus) = self.split(w);
        let f = ScalarFunction::Power(self.s);
        let sum = &apply_fun(&plus, &f)? + &apply_fun(&minus, &f)?;
        Ok(&sum.scale(0.5) - &self.target)
    }

    fn reconstruct(&self, w: &SymMatrix) -> Result<(SymMatrix, SymMatrix, f64, f64)> {
        let (plus, minus) = self.split(w);
        let inv = ScalarFunction::Power(1.0 / self.p);
        let a = apply_fun(&plus, &inv)?;
        let b = apply_fun(&minus, &inv)?;
        let rx = naive_power_mean(self.p, &a, &b)?.max_diff(&self.x);
        let ry = naive_power_mean(self.q, &a, &b)?.max_diff(&self.y);
        Ok((a, b, rx, ry))
    }

    /// Columns of the Jacobian of `F` at `W` over the basis of symmetric
    /// matrices `Eᵢᵢ`, `Eᵢⱼ + Eⱼᵢ`, rows indexed by the upper triangle.
    fn jacobian(&self, w: &SymMatrix) -> Result<Vec<Vec<f64>>> {
        let (plus, minus) = self.split(w);
        let dp = eig_sym(&plus)?;
        let dm = eig_sym(&minus)?;
        let n = w.dim();
        let mut cols = Vec::with_capacity(n * (n + 1) / 2);
        for (i, j) in upper_pairs(n) {
            let mut e = vec![0.0; n * n];
            e[i * n + j] = 1.0;
            e[j * n + i] = 1.0;
            let h = SymMatrix::from_row_major(n, e)?;
            let d = &frechet_power(&dp, self.s, &h) - &frechet_power(&dm, self.s, &h);
            cols.push(vectorize(&d.scale(0.5)));
        }
        Ok(cols)
    }
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}

fn vectorize(m: &SymMatrix) -> Vec<f64> {
    upper_pairs(m.dim()).map(|(i, j)| m.get(i, j)).collect()
}

fn devectorize(n: usize, v: &[f64]) -> SymMatrix {
    let mut data = vec![0.0; n * n];
    for ((i, j), val) in upper_pairs(n).zip(v) {
        data[i * n + j] = *val;
        data[j * n + i] = *val;
    }
    SymMatrix::from_row_major(n, data).expect("symmetric by construction")
}

/// Fréchet derivative of `M ↦ M^s` at `M = Q Λ Qᵀ` applied to `H`:
/// `Q (Γ ∘ QᵀHQ) Qᵀ` with first divided differences `Γ`.
fn frechet_power(e: &EigenDecomp, s: f64, h: &SymMatrix) -> SymMatrix {
    let n = e.dim();
    let lam: Vec<f64> = e.values.iter().map(|v| v.max(0.0)).collect();
    let q = &e.vectors;
    let inner = q.transpose().matmul(&h.to_matrix()).matmul(q);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (lam[i], lam[j]);
            let gap = a - b;
            let dd = if gap.abs() > 1e-10 * a.max(b).max(1e-300) {
                (a.powf(s) - b.powf(s)) / gap
            } else {
                let mid = 0.5 * (a + b);
                if mid == 0.0 && s < 1.0 {
                    0.0
                } else {
                    s * mid.powf(s - 1.0)
                }
            };
            data[i * n + j] = dd * inner.get(i, j);
        }
    }
    let gamma = Matrix::from_row_major(n, data).expect("finite entries");
    q.matmul(&gamma).matmul(&q.transpose()).symmetric_part()
}

/// Solves `(JᵀJ + μ·diag(JᵀJ) + μ·I) δ = −Jᵀr` by Cholesky.
fn damped_step(cols: &[Vec<f64>], residual: &[f64], mu: f64) -> Option<Vec<f64>> {
    let m = cols.len();
    let mut normal = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for a in 0..m {
        rhs[a] = -cols[a].iter().zip(residual).map(|(x, y)| x * y).sum::<f64>();
        for b in a..m {
            let v: f64 = cols[a].iter().zip(&cols[b]).map(|(x, y)| x * y).sum();
            normal[a * m + b] = v;
            normal[b * m + a] = v;
        }
    }
    for a in 0..m {
        normal[a * m + a] += mu * (normal[a * m + a] + 1.0);
    }
    // Cholesky in place (lower triangle).
    for j in 0..m {
        let mut d = normal[j * m + j];
        for k in 0..j {
            d -= normal[j * m + k] * normal[j * m + k];
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        normal[j * m + j] = d;
        for i in (j + 1)..m {
            let mut v = normal[i * m + j];
            for k in 0..j {
                v -= normal[i * m + k] * normal[j * m + k];
            }
            normal[i * m + j] = v / d;
        }
    }
    let mut z = rhs;
    for i in 0..m {
        for k in 0..i {
            z[i] -= normal[i * m + k] * z[k];
        }
        z[i] /= normal[i * m + i];
    }
    for i in (0..m).rev() {
        for k in (i + 1)..m {
            z[i] -= normal[k * m + i] * z[k];
        }
        z[i] /= normal[i * m + i];
    }
    Some(z)
}

/// Commuting initial guess: in the eigenbasis of `X`, match the diagonal of
/// `Y^q` direction by direction through the scalar map `φ_s`.
fn initial_guess(pb: &Problem) -> Result<SymMatrix> {
    let ex = eig_sym(&pb.x)?;
    let q = &ex.vectors;
    let projected = q.transpose().matmul(&pb.target.to_matrix()).matmul(q);
    let top = gamma_of(pb.s)?;
    let mut w = Vec::with_capacity(ex.dim());
    for (i, &xi) in ex.values.iter().enumerate() {
        let base = xi.powf(pb.p);
        let ratio = (projected.get(i, i) / xi.powf(pb.q)).max(1.0).powf(1.0 / pb.s);
        let root = invert_phi(pb.s, ratio.min(top))?;
        w.push(base * (root.value - 1.0));
    }
    Ok(SymMatrix::from_spectrum(q, &w))
}

/// Tries to find SPD `A, B` with naive power means of orders `p` and `q`
/// equal to `X` and `Y`. Non-convergence is reported, not raised.
pub fn explore_open_problem(p: f64, q: f64, x: &SymMatrix, y: &SymMatrix, max_iters: usize) -> Result<ExploreOutcome> {
    if !(0.5..=1.0).contains(&p) || !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidInput(format!("need 1/2 <= p <= 1 <= q, got p={p}, q={q}")));
    }
    check_same_dim(x, y)?;
    require_spd(x, "X").map_err(|e| Error::InvalidInput(e.to_string()))?;
    require_spd(y, "Y").map_err(|e| Error::InvalidInput(e.to_string()))?;
    if !is_loewner_leq(x, y, LOEWNER_TOL)? {
        return Err(Error::InvalidInput("explorer needs X <= Y".into()));
    }

    let pb = Problem {
        p,
        q,
        s: q / p,
        base: apply_fun(x, &ScalarFunction::Power(p))?,
        target: apply_fun(y, &ScalarFunction::Power(q))?,
        x: x.clone(),
        y: y.clone(),
        bound: InverseSolution::residual_bound(x, y),
    };
    let n = x.dim();
    let finish = |w: &SymMatrix, iterations: usize| -> Result<ExploreOutcome> {
        let (a, b, residual_x, residual_y) = pb.reconstruct(w)?;
        let status = if residual_x < pb.bound && residual_y < pb.bound {
            ExploreStatus::Solved
        } else {
            ExploreStatus::NotSolved
        };
        Ok(ExploreOutcome { status, a, b, residual_x, residual_y, iterations })
    };

    if pb.s == 1.0 {
        // Both equations coincide: solvable only when X = Y.
        return finish(&SymMatrix::scalar(n, 0.0), 0);
    }

    let mut w = initial_guess(&pb)?;
    let mut r = vectorize(&pb.equation(&w)?);
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut mu = 1e-3;
    let mut iterations = 0;
    while iterations < max_iters {
        let done = finish(&w, iterations)?;
        if done.residual_x.max(done.residual_y) < POLISH * pb.bound {
            break;
        }
        iterations += 1;
        let cols = pb.jacobian(&w)?;
        let mut improved = false;
        for _ in 0..30 {
            let Some(delta) = damped_step(&cols, &r, mu) else {
                mu *= 4.0;
                continue;
            };
            let candidate = &w + &devectorize(n, &delta);
            if pb.feasible(&candidate)? {
                let rc = vectorize(&pb.equation(&candidate)?);
                if norm(&rc) < norm(&r) {
                    w = candidate;
                    r = rc;
                    mu = (mu / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    finish(&w, iterations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_inputs_solve_immediately() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let out = explore_open_problem(0.5, 2.0, &x, &x, 10).unwrap();
        assert_eq!(out.status, ExploreStatus::Solved);
        assert!(out.iterations <= 1);
        assert!(out.a.max_diff(&x) < 1e-10 && out.b.max_diff(&x) < 1e-10);
    }

    #[test]
    fn commuting_inputs_solve() {
        let x = SymMatrix::diag(&[1.0, 2.0]);
        let y = SymMatrix::diag(&[1.3, 2.2]);
        let out = explore_open_problem(0.75, 2.0, &x, &y, 20).unwrap();
        assert_eq!(out.status, ExploreStatus::Solved);
    }

    #[test]
    fn p_equal_q_needs_equal_inputs() {
        let x = SymMatrix::identity(2);
        let out = explore_open_problem(1.0, 1.0, &x, &x.scale(1.1), 5).unwrap();
        assert_eq!(out.status, ExploreStatus::NotSolved);
    }

    #[test]
    fn rejects_bad_parameters() {
        let x = SymMatrix::identity(2);
        assert!(explore_open_problem(0.4, 2.0, &x, &x, 5).is_err());
        assert!(explore_open_problem(0.5, 0.9, &x, &x, 5).is_err());
        assert!(explore_open_problem(0.5, 2.0, &x.scale(2.0), &x, 5).is_err());
    }

    #[test]
    fn frechet_matches_finite_difference() {
        let m = SymMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap();
        let h = SymMatrix::from_rows(&[vec![0.1, -0.4], vec![-0.4, 0.2]]).unwrap();
        let s = 2.5;
        let e = eig_sym(&m).unwrap();
        let exact = frechet_power(&e, s, &h);
        let eps = 1e-6;
        let f = ScalarFunction::Power(s);
        let fd = (&apply_fun(&(&m + &h.scale(eps)), &f).unwrap() - &apply_fun(&(&m - &h.scale(eps)), &f).unwrap())
            .scale(0.5 / eps);
        assert!(exact.max_diff(&fd) < 1e-8);
    }
}
