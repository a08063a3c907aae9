use super::eigen::eig_sym;
use super::matrix::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Outcome of a Loewner-order test `A ≤ B`.
#[derive(Clone, Debug, PartialEq)]
pub struct LoewnerCheck {
    pub holds: bool,
    /// `λ_min(B − A)`.
    pub min_eigenvalue: f64,
    /// Unit eigenvector of `B − A` for `min_eigenvalue`.
    pub eigenvector: Vec<f64>,
    /// Admissible negative slack `tol·(1 + ‖A‖_max + ‖B‖_max)`.
    pub slack: f64,
}

impl LoewnerCheck {
    /// The offending direction, present only when the order fails.
    pub fn witness(&self) -> Option<(f64, &[f64])> {
        (!self.holds).then_some((self.min_eigenvalue, self.eigenvector.as_slice()))
    }
}

/// Tests `A ≤ B`, i.e. `λ_min(B − A) ≥ −tol·(1 + ‖A‖_max + ‖B‖_max)`.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<LoewnerCheck> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be non-negative, got {tol}")));
    }
    let e = eig_sym(&(b - a))?;
    let last = e.dim() - 1;
    let slack = tol * (1.0 + a.max_abs() + b.max_abs());
    Ok(LoewnerCheck { holds: e.min() >= -slack, min_eigenvalue: e.min(), eigenvector: e.vectors.column(last), slack })
}

/// Convenience wrapper returning only the verdict.
pub fn is_loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<bool> {
    loewner_leq(a, b, tol).map(|c| c.holds)
}

const MAX_CONDITION: f64 = 1e12;

/// `C·M·Cᵀ`, symmetrized. `C` must be invertible with 2-norm condition
/// estimate (from the spectrum of `CᵀC`) below `1e12`.
pub fn congruence_transform(c: &Matrix, m: &SymMatrix) -> Result<SymMatrix> {
    if c.dim() != m.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", c.dim(), m.dim())));
    }
    let gram = c.transpose().matmul(c).symmetric_part();
    let e = eig_sym(&gram)?;
    let cond = if e.min() > 0.0 { (e.max() / e.min()).sqrt() } else { f64::INFINITY };
    if !(cond < MAX_CONDITION) {
        return Err(Error::IllConditioned(cond));
    }
    Ok(c.matmul(&m.to_matrix()).matmul(&c.transpose()).symmetric_part())
}
