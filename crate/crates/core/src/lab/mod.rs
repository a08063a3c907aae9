//! Seeded, reproducible checks of matrix inequalities and of operator
//! monotonicity.
//!
//! Every check draws independent samples `0..samples`; sample `i` uses the
//! random stream `(seed, i)`, so results do not depend on thread count.
//! Samples run in parallel and the reported violation is always the one
//! with the smallest sample index.

mod characterization;

pub use characterization::{
    prop31_counterexample, test_characterization, CharacterizationReport, Hypothesis, Prop31Report,
};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    apply_fun, eig_sym, gaussian_matrix, loewner_leq, random_spd_log_uniform, sample_rng, Matrix, ScalarFunction,
    SymMatrix,
};
use crate::means::{arithmetic_mean, kubo_ando_power_mean, naive_power_mean};

/// Loewner tolerance used by every lab comparison.
pub const LAB_TOL: f64 = 1e-9;

/// Spectrum range of randomly drawn SPD operands.
const SPECTRUM: (f64, f64) = (0.1, 10.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    HoldsOnSamples,
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleOrigin {
    Random,
    /// The scaled canonical pair `[[1,1],[1,1]] ≤ [[2,1],[1,1]]`.
    Injected,
    /// Built by an inverse solver from a monotonicity counterexample.
    Constructed,
}

/// A failed comparison `lhs ≤ rhs`, with the inputs it came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub lhs: SymMatrix,
    pub rhs: SymMatrix,
    /// Smallest eigenvalue of `rhs − lhs`.
    pub min_eigenvalue: f64,
    pub eigenvector: Vec<f64>,
    pub seed: u64,
    pub sample_index: u64,
    pub origin: SampleOrigin,
}

impl Witness {
    /// Re-runs the Loewner comparison; returns the recomputed eigenvalue.
    pub fn recheck(&self) -> Result<f64> {
        Ok(loewner_leq(&self.lhs, &self.rhs, LAB_TOL)?.min_eigenvalue)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub samples_run: u64,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == VerdictStatus::HoldsOnSamples
    }

    pub fn is_violated(&self) -> bool {
        self.status == VerdictStatus::Violated
    }

    fn from_search(samples: u64, found: Option<Witness>) -> Self {
        match found {
            None => Self { status: VerdictStatus::HoldsOnSamples, samples_run: samples, witness: None },
            Some(w) => Self {
                status: VerdictStatus::Violated,
                samples_run: (w.sample_index + 1).min(samples.max(1)),
                witness: Some(w),
            },
        }
    }
}

/// Where a comparison came from, copied into any resulting witness.
#[derive(Clone, Copy)]
pub(crate) struct SampleTag {
    pub seed: u64,
    pub index: u64,
    pub origin: SampleOrigin,
}

/// `None` if `lhs ≤ rhs` at [`LAB_TOL`], otherwise the witness.
pub(crate) fn compare(
    relation: &str,
    a: &SymMatrix,
    b: &SymMatrix,
    lhs: SymMatrix,
    rhs: SymMatrix,
    tag: SampleTag,
) -> Result<Option<Witness>> {
    let check = loewner_leq(&lhs, &rhs, LAB_TOL)?;
    if check.holds {
        return Ok(None);
    }
    Ok(Some(Witness {
        relation: relation.to_string(),
        a: a.clone(),
        b: b.clone(),
        lhs,
        rhs,
        min_eigenvalue: check.min_eigenvalue,
        eigenvector: check.eigenvector,
        seed: tag.seed,
        sample_index: tag.index,
        origin: tag.origin,
    }))
}

/// Runs `check` on every sample index and keeps the lowest-index failure
/// (a witness or an error).
pub(crate) fn search<F>(samples: u64, check: F) -> Result<Verdict>
where
    F: Fn(u64) -> Result<Option<Witness>> + Sync,
{
    let first = (0..samples).into_par_iter().map(&check).find_map_first(|r| match r {
        Ok(None) => None,
        other => Some(other),
    });
    match first {
        None => Ok(Verdict::from_search(samples, None)),
        Some(r) => Ok(Verdict::from_search(samples, r?)),
    }
}

pub(crate) fn check_sample_args(dim: usize, samples: u64) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    Ok(())
}

/// Random SPD pair with spectra log-uniform in `[0.1, 10]`.
pub(crate) fn random_pair(seed: u64, index: u64, dim: usize) -> Result<(SymMatrix, SymMatrix)> {
    let mut rng = sample_rng(seed, index);
    let a = random_spd_log_uniform(&mut rng, dim, SPECTRUM.0, SPECTRUM.1)?;
    let b = random_spd_log_uniform(&mut rng, dim, SPECTRUM.0, SPECTRUM.1)?;
    Ok((a, b))
}

/// Random ordered pair `A ≤ B`: `B = A + t·LᵀL` with `L` of random rank and
/// `t` log-uniform, scaled so that `λ_max(B) ≤ 10·λ_max(A)`.
pub(crate) fn random_ordered_pair(seed: u64, index: u64, dim: usize) -> Result<(SymMatrix, SymMatrix)> {
    let mut rng = sample_rng(seed, index);
    let a = random_spd_log_uniform(&mut rng, dim, SPECTRUM.0, SPECTRUM.1)?;
    let rank = rng.random_range(1..=dim);
    let l = gaussian_matrix(&mut rng, rank, dim);
    let mut gram = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            gram[i * dim + j] = (0..rank).map(|k| l[k * dim + i] * l[k * dim + j]).sum();
        }
    }
    let gram = Matrix::from_row_major(dim, gram)?.symmetric_part();
    let gram_norm = eig_sym(&gram)?.max();
    let a_norm = eig_sym(&a)?.max();
    let t = 9.0 * (-6.0 * rng.random::<f64>()).exp();
    let scale = if gram_norm > 0.0 { t * a_norm / gram_norm } else { 0.0 };
    let b = &a + &gram.scale(scale);
    Ok((a, b))
}

/// The canonical non-monotonicity pair for `t^r`, `r > 1`, scaled by a
/// log-uniform factor in `[1/2, 2]` and embedded into an identity.
pub(crate) fn injected_pair(seed: u64, dim: usize) -> Result<(SymMatrix, SymMatrix)> {
    let mut rng = sample_rng(seed, 0);
    let c = (std::f64::consts::LN_2 * (2.0 * rng.random::<f64>() - 1.0)).exp();
    let a = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]])?.scale(c);
    let b = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 1.0]])?.scale(c);
    Ok((SymMatrix::embed(&a, dim), SymMatrix::embed(&b, dim)))
}

fn check_chain_params(p: f64, q: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0 && q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidInput(format!("need 0 < p <= 1 <= q, got p={p}, q={q}")));
    }
    Ok(())
}

/// Checks on random SPD pairs
///
/// ```text
/// A♯B ≤ P_μ(p, A, B) ≤ (A+B)/2 ≤ P_μ(q, A, B)
/// ((A^p+B^p)/2)^{1/p} ≤ (A+B)/2 ≤ ((A^q+B^q)/2)^{1/q}      (only if p ≥ 1/2)
/// ```
///
/// Every fourth sample draws `B` close to `A` to exercise the near-equality regime.
pub fn check_mean_inequalities(p: f64, q: f64, dim: usize, samples: u64, seed: u64) -> Result<Verdict> {
    check_chain_params(p, q)?;
    check_sample_args(dim, samples)?;
    search(samples, |index| {
        let (a, b) = if index % 4 == 3 {
            let (a, b) = random_pair(seed, index, dim)?;
            let b = &a + &(&b - &a).scale(1e-3);
            (a, b)
        } else {
            random_pair(seed, index, dim)?
        };
        let tag = SampleTag { seed, index, origin: SampleOrigin::Random };
        mean_chain_violation(p, q, &a, &b, tag)
    })
}

fn mean_chain_violation(p: f64, q: f64, a: &SymMatrix, b: &SymMatrix, tag: SampleTag) -> Result<Option<Witness>> {
    let geo = kubo_ando_power_mean(0.0, a, b)?;
    let lo = kubo_ando_power_mean(p, a, b)?;
    let arith = arithmetic_mean(a, b);
    let hi = kubo_ando_power_mean(q, a, b)?;
    let mut links = vec![
        ("A#B <= P_mu(p)", geo, lo.clone()),
        ("P_mu(p) <= (A+B)/2", lo, arith.clone()),
        ("(A+B)/2 <= P_mu(q)", arith.clone(), hi),
    ];
    if p >= 0.5 {
        links.push(("naive(p) <= (A+B)/2", naive_power_mean(p, a, b)?, arith.clone()));
        links.push(("(A+B)/2 <= naive(q)", arith, naive_power_mean(q, a, b)?));
    }
    for (relation, lhs, rhs) in links {
        if let Some(w) = compare(relation, a, b, lhs, rhs, tag)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Samples `A ≤ B` and tests `f(A) ≤ f(B)`.
///
/// For `f = t^r` with `r > 1` and `dim ≥ 2`, sample 0 is the scaled
/// canonical pair `[[1,1],[1,1]] ≤ [[2,1],[1,1]]`, which always violates.
pub fn test_monotonicity(f: &ScalarFunction, dim: usize, samples: u64, seed: u64) -> Result<Verdict> {
    check_sample_args(dim, samples)?;
    let inject = matches!(f, ScalarFunction::Power(r) if *r > 1.0) && dim >= 2;
    search(samples, |index| {
        let (a, b, origin) = if inject && index == 0 {
            let (a, b) = injected_pair(seed, dim)?;
            (a, b, SampleOrigin::Injected)
        } else {
            let (a, b) = random_ordered_pair(seed, index, dim)?;
            (a, b, SampleOrigin::Random)
        };
        let tag = SampleTag { seed, index, origin };
        compare("f(A) <= f(B)", &a, &b, apply_fun(&a, f)?, apply_fun(&b, f)?, tag)
    })
}
