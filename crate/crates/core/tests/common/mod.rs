//! Instance generators and independent scalar oracles shared by the test targets.

#![allow(dead_code)]

use meanlab::linalg::{apply_fun, eig_sym, random_orthogonal, random_spd_from, sample_rng};
use meanlab::{ScalarFunction, SymMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    sample_rng(seed, index)
}

pub fn spd(rng: &mut ChaCha8Rng, dim: usize, lo: f64, hi: f64) -> SymMatrix {
    random_spd_from(rng, dim, lo, hi).unwrap()
}

/// `Y = X^{1/2} U diag(λ) Uᵀ X^{1/2}` for random SPD `X` and Haar `U`, so the
/// congruence frame `X^{-1/2} Y X^{-1/2}` has spectrum exactly `λ`.
pub fn framed_pair(rng: &mut ChaCha8Rng, lambdas: &[f64]) -> (SymMatrix, SymMatrix) {
    let dim = lambdas.len();
    let x = spd(rng, dim, 0.5, 4.0);
    let u = random_orthogonal(rng, dim);
    let y0 = SymMatrix::from_spectrum(&u, lambdas);
    let root = apply_fun(&x, &ScalarFunction::Sqrt).unwrap();
    (x.clone(), root.sandwich(&y0))
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp()
}

pub fn min_eig(m: &SymMatrix) -> f64 {
    eig_sym(m).unwrap().min()
}

pub fn rel_bound(x: &SymMatrix, y: &SymMatrix) -> f64 {
    1e-8 * (1.0 + x.max_abs() + y.max_abs())
}

/// `h_p(a) = cosh(p ln a)^{1/p}`, so the branch `a ≥ 1` inverts in closed form.
pub fn h_inverse_closed_form(p: f64, y: f64) -> f64 {
    (y.powf(p).acosh() / p).exp()
}

/// Plain bisection for the increasing-or-decreasing `g` on `[lo, hi]`.
pub fn bisect(g: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    let increasing = g(hi) > g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `a ∈ [1, 2]` with `((a^r + (2−a)^r)/2)^{1/r} = x`, by bisection.
pub fn phi_inverse_bisection(r: f64, x: f64) -> f64 {
    let phi = |a: f64| ((a.powf(r) + (2.0 - a).powf(r)) / 2.0).powf(1.0 / r);
    bisect(phi, x, 1.0, 2.0)
}
