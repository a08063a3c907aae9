//! Constructive inverse mean problems.
//!
//! Given Loewner-ordered `X ≤ Y`, each solver returns SPD (or PSD) matrices
//! `A, B` for which two prescribed means of `(A, B)` reproduce `X` and `Y`:
//!
//! | solver | first mean = `X` | second mean = `Y` | hypothesis |
//! |---|---|---|---|
//! | [`solve_geom_power`] | `A♯B` | `P_μ(p, A, B)` | `X ≤ Y` |
//! | [`solve_arith_power_local`] | `(A+B)/2` | `P_μ(r, A, B)` | `X ≤ Y < γX` (r ≥ 1) or `γX < Y ≤ X` (r ≤ 1) |
//! | [`solve_sqrt_arith`] | `((A^{1/2}+B^{1/2})/2)²` | `(A+B)/2` | `X ≤ Y < 2X` |
//! | [`solve_arith_quadratic`] | `(A+B)/2` | `((A²+B²)/2)^{1/2}` | `X² ≤ Y² < 2X²` |
//!
//! All of them work in the congruence frame `Y₀ = X^{-1/2} Y X^{-1/2}` (or
//! directly with square roots), solve a scalar problem per eigenvalue, and
//! map back. The ratio restrictions are removed by [`chain_decompose`],
//! which splits `X ≤ Y` into links `Zₖ ≤ Zₖ₊₁ ≤ γ₀Zₖ`.

mod chain;
mod explore;
mod local;

pub use chain::{
    chain_decompose, chain_solve_global, chain_solve_global_below, chain_solve_sqrt, ChainLink, ChainWitness,
    SQRT_CHAIN_GAMMA0,
};
pub use explore::{explore_open_problem, ExploreOutcome, ExploreStatus};
pub use local::{solve_arith_power_local, solve_arith_quadratic, solve_geom_power, solve_sqrt_arith};

use crate::error::{Error, Result};
use crate::linalg::{eig_sym, loewner_leq, psd_tolerance, SymMatrix};

/// Tolerance for every Loewner-order hypothesis check.
pub const LOEWNER_TOL: f64 = 1e-9;
/// Width of the band that turns a strict bound `Y < γX` into `Y ≤ (γ − band)X`.
pub const STRICT_BAND: f64 = 1e-9;
/// Relative bound on reconstruction residuals.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// A pair `(A, B)` realizing two prescribed means, with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseSolution {
    pub a: SymMatrix,
    pub b: SymMatrix,
    /// Max-norm error of the first mean equation.
    pub residual_x: f64,
    /// Max-norm error of the second mean equation.
    pub residual_y: f64,
    /// Hypothesis under which the construction applies.
    pub condition: String,
    pub warning: Option<String>,
}

impl InverseSolution {
    /// `1e-8·(1 + ‖X‖_max + ‖Y‖_max)`.
    pub fn residual_bound(x: &SymMatrix, y: &SymMatrix) -> f64 {
        RESIDUAL_TOL * (1.0 + x.max_abs() + y.max_abs())
    }

    pub(crate) fn certify(
        a: SymMatrix,
        b: SymMatrix,
        residual_x: f64,
        residual_y: f64,
        x: &SymMatrix,
        y: &SymMatrix,
        condition: &str,
    ) -> Result<Self> {
        let bound = Self::residual_bound(x, y);
        if !(residual_x <= bound && residual_y <= bound) {
            return Err(Error::NumericalFailure(format!(
                "reconstruction residuals ({residual_x:e}, {residual_y:e}) exceed {bound:e}"
            )));
        }
        for (m, name) in [(&a, "A"), (&b, "B")] {
            let lmin = eig_sym(m)?.min();
            if lmin < -psd_tolerance(m) {
                return Err(Error::NumericalFailure(format!("{name} is not positive semidefinite (λ_min = {lmin:e})")));
            }
        }
        Ok(Self { a, b, residual_x, residual_y, condition: condition.to_string(), warning: None })
    }
}

pub(crate) fn check_same_dim(x: &SymMatrix, y: &SymMatrix) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", x.dim(), y.dim())));
    }
    Ok(())
}

/// `lhs ≤ rhs` at [`LOEWNER_TOL`], else `HypothesisViolated` naming `what`.
pub(crate) fn require_leq(lhs: &SymMatrix, rhs: &SymMatrix, what: &str) -> Result<()> {
    let check = loewner_leq(lhs, rhs, LOEWNER_TOL)?;
    if check.holds {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!("{what} fails (λ_min of the difference = {:e})", check.min_eigenvalue)))
    }
}

pub(crate) fn require_psd(m: &SymMatrix, what: &str) -> Result<()> {
    let lmin = eig_sym(m)?.min();
    if lmin < -psd_tolerance(m) {
        return Err(Error::Domain(format!("{what} is not positive semidefinite (λ_min = {lmin:e})")));
    }
    Ok(())
}
