//! Seeded random matrices. All randomness flows from ChaCha8 generators so
//! that every sample is reproducible bit-for-bit from `(seed, stream)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Vec<f64> {
    (0..rows * cols).map(|_| rng.sample(StandardNormal)).collect()
}

/// Haar-distributed orthogonal matrix: Householder QR of a Gaussian matrix
/// with the signs of `R`'s diagonal folded into `Q`.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Matrix {
    let n = dim;
    let mut a = gaussian_matrix(rng, n, n);
    let mut q = Matrix::identity(n);
    let mut signs = vec![1.0; n];

    // The trailing 1×1 block needs no reflection, only its sign.
    for k in 0..n.saturating_sub(1) {
        let norm = (k..n).map(|i| a[i * n + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k * n + k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..n).map(|i| a[i * n + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            signs[k] = alpha.signum();
            continue;
        }
        // A ← (I − 2vvᵀ/‖v‖²) A on rows k..n
        for j in k..n {
            let dot: f64 = (k..n).map(|i| v[i - k] * a[i * n + j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..n {
                a[i * n + j] -= f * v[i - k];
            }
        }
        // Q ← Q (I − 2vvᵀ/‖v‖²)
        for i in 0..n {
            let dot: f64 = (k..n).map(|j| q.get(i, j) * v[j - k]).sum();
            let f = 2.0 * dot / vnorm2;
            for j in k..n {
                q.set(i, j, q.get(i, j) - f * v[j - k]);
            }
        }
        signs[k] = a[k * n + k].signum();
    }
    if n > 0 && a[n * n - 1] < 0.0 {
        signs[n - 1] = -1.0;
    }
    for (j, &sign) in signs.iter().enumerate() {
        if sign < 0.0 {
            for i in 0..n {
                q.set(i, j, -q.get(i, j));
            }
        }
    }
    q
}

/// `Q·diag(λ)·Qᵀ` with `λ ~ U[lo, hi]` and Haar `Q`, drawn from `rng`.
pub fn random_spd_from<R: Rng + ?Sized>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> Result<SymMatrix> {
    check_spectrum_bounds(dim, lo, hi)?;
    let q = random_orthogonal(rng, dim);
    let spectrum: Vec<f64> = (0..dim).map(|_| uniform(rng, lo, hi)).collect();
    Ok(SymMatrix::from_spectrum(&q, &spectrum))
}

/// Like [`random_spd_from`] with eigenvalues log-uniform on `[lo, hi]`.
pub fn random_spd_log_uniform<R: Rng + ?Sized>(rng: &mut R, dim: usize, lo: f64, hi: f64) -> Result<SymMatrix> {
    check_spectrum_bounds(dim, lo, hi)?;
    let q = random_orthogonal(rng, dim);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let spectrum: Vec<f64> = (0..dim).map(|_| uniform(rng, llo, lhi).exp().clamp(lo, hi)).collect();
    Ok(SymMatrix::from_spectrum(&q, &spectrum))
}

/// Seeded random SPD matrix with spectrum uniform in `[lo, hi]`.
pub fn random_spd(dim: usize, seed: u64, lo: f64, hi: f64) -> Result<SymMatrix> {
    random_spd_from(&mut ChaCha8Rng::seed_from_u64(seed), dim, lo, hi)
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        lo
    } else {
        lo + (hi - lo) * rng.random::<f64>()
    }
}

fn check_spectrum_bounds(dim: usize, lo: f64, hi: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if !(lo > 0.0) || !(lo <= hi) || !hi.is_finite() {
        return Err(Error::InvalidInput(format!("spectrum bounds must satisfy 0 < lo <= hi < inf, got [{lo}, {hi}]")));
    }
    Ok(())
}
