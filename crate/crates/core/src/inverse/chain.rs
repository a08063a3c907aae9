//! Spectral chain decomposition of `X ≤ Y` into ratio-bounded links.
//!
//! With `Y₀ = X^{-1/2} Y X^{-1/2} = Σ λᵢ Eᵢ` (eigenvalues descending) and
//! integers `mᵢ` such that `γ₀^{mᵢ} < λᵢ ≤ γ₀^{mᵢ+1}`, the chain lives in the
//! eigenbasis of `Y₀`: start from `I`; at level `k = 0, 1, …` first lift all
//! not-yet-finalized directions to `γ₀^k` (for `k > 0`), then finalize every
//! group whose level is `k` to its own `λᵢ`. Each step multiplies some
//! directions by at most `γ₀` and leaves the rest fixed, so consecutive
//! elements satisfy `Zₖ ≤ Zₖ₊₁ ≤ γ₀Zₖ`. Every element is mapped back by the
//! congruence `X^{1/2}·X^{1/2}`.

use rayon::prelude::*;

use super::local::{solve_arith_power_local, solve_sqrt_arith};
use super::{check_same_dim, require_leq, InverseSolution, LOEWNER_TOL, STRICT_BAND};
use crate::error::{Error, Result};
use crate::linalg::{eig_sym, is_loewner_leq, spd_sqrt_pair, EigenDecomp, SymMatrix};
use crate::scalar::{chain_level, gamma_of};

/// Ratio used by [`chain_solve_sqrt`]; any value in `(1, 2)` works.
pub const SQRT_CHAIN_GAMMA0: f64 = 1.5;

/// Eigenvalues of `Y₀` within this relative distance of 1 need no step.
const UNIT_GUARD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ChainLink {
    /// `Zₖ ≤ Zₖ₊₁ ≤ γ₀Zₖ` at tolerance `1e-9`.
    pub ratio_ok: bool,
    pub solution: Option<InverseSolution>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainWitness {
    /// `Z₁ = X, …, Z_M = Y`.
    pub zs: Vec<SymMatrix>,
    pub gamma0: f64,
    pub links: Vec<ChainLink>,
    /// Level `mᵢ` per eigenvalue of `Y₀` (descending); `-1` marks `λᵢ = 1`.
    pub levels: Vec<i64>,
    /// `e` with `Y ≤ γ₀^e X`; the majorant itself is not a chain element.
    pub majorant_exponent: i64,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.zs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zs.is_empty()
    }

    pub fn all_ratios_ok(&self) -> bool {
        self.links.iter().all(|l| l.ratio_ok)
    }

    pub fn all_links_solved(&self) -> bool {
        self.links.iter().all(|l| l.solution.is_some())
    }

    /// Largest reconstruction residual over solved links.
    pub fn max_residual(&self) -> f64 {
        self.links.iter().filter_map(|l| l.solution.as_ref()).fold(0.0, |m, s| m.max(s.residual_x).max(s.residual_y))
    }
}

pub fn chain_decompose(x: &SymMatrix, y: &SymMatrix, gamma0: f64) -> Result<ChainWitness> {
    if !(gamma0 > 1.0 + 1e-9) || !gamma0.is_finite() {
        return Err(Error::InvalidInput(format!("gamma0 must exceed 1 + 1e-9, got {gamma0}")));
    }
    check_same_dim(x, y)?;
    let (root, inv_root) = spd_sqrt_pair(x, "X")?;
    require_leq(x, y, "X <= Y")?;

    let raw = eig_sym(&inv_root.sandwich(y))?;
    let frame = EigenDecomp { values: raw.values.iter().map(|l| l.max(1.0)).collect(), vectors: raw.vectors };

    let mut levels = vec![-1i64; frame.dim()];
    for group in frame.groups() {
        let lowest = frame.values[group.end - 1];
        if lowest <= 1.0 + UNIT_GUARD {
            continue;
        }
        let m = chain_level(lowest, gamma0);
        for i in group {
            levels[i] = m;
        }
    }
    let top = levels.iter().copied().max().unwrap_or(-1);

    let lift = |diag: &[f64]| root.sandwich(&SymMatrix::from_spectrum(&frame.vectors, diag));
    let mut current = vec![1.0; frame.dim()];
    let mut zs = vec![x.clone()];
    for k in 0..=top {
        if k > 0 {
            let level = gamma0.powi(k as i32);
            for (c, &m) in current.iter_mut().zip(&levels) {
                if m >= k {
                    *c = level;
                }
            }
            zs.push(lift(&current));
        }
        if levels.contains(&k) {
            for (i, &m) in levels.iter().enumerate() {
                if m == k {
                    current[i] = frame.values[i];
                }
            }
            zs.push(lift(&current));
        }
    }
    if zs.len() > 1 {
        *zs.last_mut().expect("non-empty chain") = y.clone();
    }

    let links = zs
        .windows(2)
        .map(|w| {
            let ratio_ok =
                is_loewner_leq(&w[0], &w[1], LOEWNER_TOL)? && is_loewner_leq(&w[1], &w[0].scale(gamma0), LOEWNER_TOL)?;
            Ok(ChainLink { ratio_ok, solution: None })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ChainWitness { zs, gamma0, links, levels, majorant_exponent: top + 1 })
}

fn solve_links(
    mut witness: ChainWitness,
    solve: impl Fn(&SymMatrix, &SymMatrix) -> Result<InverseSolution> + Sync,
) -> Result<ChainWitness> {
    let solutions = witness.zs.par_windows(2).map(|w| solve(&w[0], &w[1])).collect::<Result<Vec<_>>>()?;
    for (link, sol) in witness.links.iter_mut().zip(solutions) {
        link.solution = Some(sol);
    }
    Ok(witness)
}

/// Chains `X ≤ Y` and solves every link with
/// `(A+B)/2 = Zₖ`, `P_μ(r, A, B) = Zₖ₊₁` for `r > 1`.
///
/// `gamma0` defaults to `(1 + γ(r))/2` and must lie in `(1, γ(r))`.
pub fn chain_solve_global(r: f64, x: &SymMatrix, y: &SymMatrix, gamma0: Option<f64>) -> Result<ChainWitness> {
    if !(r > 1.0) {
        return Err(Error::InvalidInput(format!("chain_solve_global needs r > 1, got {r}")));
    }
    let gamma = gamma_of(r)?;
    let gamma0 = gamma0.unwrap_or(0.5 * (1.0 + gamma));
    if !(gamma0 < gamma - STRICT_BAND) {
        return Err(Error::InvalidInput(format!("gamma0 must lie in (1, {gamma}), got {gamma0}")));
    }
    let witness = chain_decompose(x, y, gamma0)?;
    solve_links(witness, |lo, hi| solve_arith_power_local(r, lo, hi))
}

/// The mirrored direction for `0 < p < 1`: each link is solved with the
/// upper element as the arithmetic mean and the lower one as
/// `P_μ(p, A, B)`, i.e. `(A+B)/2 = Zₖ₊₁`, `P_μ(p, A, B) = Zₖ`.
///
/// Links need `Zₖ₊₁ < Zₖ/γ(p)`, so `gamma0` defaults to `(1 + 1/γ(p))/2`.
pub fn chain_solve_global_below(p: f64, x: &SymMatrix, y: &SymMatrix, gamma0: Option<f64>) -> Result<ChainWitness> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("chain_solve_global_below needs 0 < p < 1, got {p}")));
    }
    let gamma = gamma_of(p)?;
    let ceiling = 1.0 / (gamma + STRICT_BAND);
    let gamma0 = gamma0.unwrap_or(0.5 * (1.0 + 1.0 / gamma));
    if !(gamma0 < ceiling) {
        return Err(Error::InvalidInput(format!("gamma0 must lie in (1, {ceiling}), got {gamma0}")));
    }
    let witness = chain_decompose(x, y, gamma0)?;
    solve_links(witness, |lo, hi| solve_arith_power_local(p, hi, lo))
}

/// Chains `X ≤ Y` at `γ₀ = 1.5` and solves each link with the closed-form
/// square-root solver.
pub fn chain_solve_sqrt(x: &SymMatrix, y: &SymMatrix) -> Result<ChainWitness> {
    let witness = chain_decompose(x, y, SQRT_CHAIN_GAMMA0)?;
    solve_links(witness, solve_sqrt_arith)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_chain() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let w = chain_decompose(&x, &x, 1.2).unwrap();
        assert_eq!(w.zs, vec![x.clone()]);
        assert!(w.links.is_empty());
        assert_eq!(w.majorant_exponent, 0);
    }

    #[test]
    fn hand_traced_chain() {
        let w = chain_decompose(&SymMatrix::identity(2), &SymMatrix::diag(&[1.9, 1.1]), 1.2).unwrap();
        let expected = [[1.0, 1.0], [1.0, 1.1], [1.2, 1.1], [1.44, 1.1], [1.728, 1.1], [1.9, 1.1]];
        assert_eq!(w.len(), expected.len());
        for (z, e) in w.zs.iter().zip(&expected) {
            assert!(z.max_diff(&SymMatrix::diag(e)) < 1e-10, "{z}");
        }
        assert_eq!(w.levels, vec![3, 0]);
        assert_eq!(w.majorant_exponent, 4);
        assert!(w.all_ratios_ok());
    }

    #[test]
    fn single_step_for_small_ratio() {
        let i = SymMatrix::identity(3);
        let w = chain_decompose(&i, &i.scale(1.15), 1.2).unwrap();
        assert_eq!(w.len(), 2);
        let w = chain_decompose(&i, &i.scale(1.2), 1.2).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn decompose_errors() {
        let i = SymMatrix::identity(2);
        assert!(matches!(chain_decompose(&i.scale(2.0), &i, 1.2), Err(Error::HypothesisViolated(_))));
        assert!(matches!(chain_decompose(&i, &i, 1.0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn global_solver_examples() {
        let one = SymMatrix::diag(&[1.0]);
        let w = chain_solve_global(2.0, &one, &one, None).unwrap();
        assert_eq!(w.len(), 1);

        let w = chain_solve_global(2.0, &one, &SymMatrix::diag(&[4.0]), None).unwrap();
        assert_eq!(w.len(), 9);
        assert!(w.all_links_solved() && w.max_residual() < 1e-9);

        let w = chain_solve_global(2.0, &SymMatrix::identity(2), &SymMatrix::diag(&[1.9, 1.1]), Some(1.2)).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w.links.iter().filter(|l| l.solution.is_some()).count(), 5);

        assert!(chain_solve_global(1.0, &one, &one, None).is_err());
        assert!(chain_solve_global(2.0, &one, &one, Some(1.5)).is_err());
    }

    #[test]
    fn below_solver_links() {
        let x = SymMatrix::identity(2);
        let y = SymMatrix::diag(&[5.0, 1.5]);
        let w = chain_solve_global_below(0.5, &x, &y, None).unwrap();
        assert!(w.all_links_solved() && w.all_ratios_ok());
        assert!(chain_solve_global_below(1.0, &x, &y, None).is_err());
    }

    #[test]
    fn sqrt_chain_examples() {
        let w = chain_solve_sqrt(&SymMatrix::diag(&[1.0]), &SymMatrix::diag(&[9.0])).unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.all_links_solved());
        let w = chain_solve_sqrt(&SymMatrix::identity(2), &SymMatrix::diag(&[4.0, 2.0])).unwrap();
        assert!(w.max_residual() < 1e-8);
    }
}
