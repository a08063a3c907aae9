//! Scalar reductions behind the matrix inverse problems.
//!
//! - `h_p(a) = ((a^p + a^{-p})/2)^{1/p}` maps `[1, ∞)` onto `[1, ∞)`; it is the
//!   Kubo-Ando power mean of `(a, 1/a)`, whose geometric mean is 1.
//! - `φ_r(a) = ((a^r + (2−a)^r)/2)^{1/r}` maps `[1, 2]` onto `[1, γ]` (r ≥ 1) or
//!   `[γ, 1]` (r ≤ 1) with `γ = 2^{1−1/r}`; it is the power mean of `(a, 2−a)`,
//!   whose arithmetic mean is 1.
//!
//! Both maps are even about their fixed point (`a ↦ 1/a`, `a ↦ 2−a`), so the
//! inversions always return the branch `a ≥ 1` and report the mirrored root
//! alongside.

use crate::error::{Error, Result};

/// Slack admitted at the ends of a target range.
pub const ENDPOINT_SLACK: f64 = 1e-12;
/// Bracket width after which bisection hands over to Newton.
const BISECTION_WIDTH: f64 = 1e-13;
const NEWTON_STEPS: usize = 3;
const MAX_BISECTIONS: usize = 2000;
/// Relative guard used when counting geometric steps.
const LEVEL_GUARD: f64 = 1e-12;

/// A root on a documented monotone branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchedRoot {
    pub value: f64,
    /// The mirrored root: `1/value` for `h`, `2 − value` for `φ`, computed
    /// directly rather than by subtraction.
    pub mirror: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// `γ(r) = 2^{1 − 1/r}`.
pub fn gamma_of(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!("exponent must be positive, got {r}")));
    }
    Ok((1.0 - 1.0 / r).exp2())
}

pub fn h_map(p: f64, a: f64) -> f64 {
    (0.5 * (a.powf(p) + a.powf(-p))).powf(1.0 / p)
}

fn h_derivative(p: f64, a: f64) -> f64 {
    let g = 0.5 * (a.powf(p) + a.powf(-p));
    g.powf(1.0 / p - 1.0) * 0.5 * (a.powf(p - 1.0) - a.powf(-p - 1.0))
}

pub fn phi_map(r: f64, a: f64) -> f64 {
    phi_of_complement(r, 2.0 - a)
}

/// `φ_r(2 − b)`, evaluated from the complement `b = 2 − a`.
fn phi_of_complement(r: f64, b: f64) -> f64 {
    (0.5 * ((2.0 - b).powf(r) + b.powf(r))).powf(1.0 / r)
}

fn phi_complement_derivative(r: f64, b: f64) -> f64 {
    let g = 0.5 * ((2.0 - b).powf(r) + b.powf(r));
    g.powf(1.0 / r - 1.0) * 0.5 * (b.powf(r - 1.0) - (2.0 - b).powf(r - 1.0))
}

/// Solves `f(x) = target` for `f` monotone on `[lo, hi]` (bracketing the
/// target): bisection down to width `1e-13`, continued while the residual
/// exceeds `tol` and the bracket can still shrink, then at most three
/// Newton steps kept only when they stay in the bracket and improve the
/// residual.
fn solve_monotone(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    increasing: bool,
    tol: f64,
) -> (f64, f64, usize) {
    let residual = |x: f64| (f(x) - target).abs();
    let mut best = if residual(lo) <= residual(hi) { lo } else { hi };
    let mut best_res = residual(best);
    let mut iterations = 0;

    while iterations < MAX_BISECTIONS && best_res > 0.0 {
        if hi - lo <= BISECTION_WIDTH && best_res <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let v = f(mid) - target;
        if v.abs() < best_res {
            best = mid;
            best_res = v.abs();
        }
        if (v < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = best;
    for _ in 0..NEWTON_STEPS {
        if best_res == 0.0 {
            break;
        }
        let d = df(x);
        let step = (f(x) - target) / d;
        let candidate = x - step;
        if !candidate.is_finite() || candidate < lo || candidate > hi {
            break;
        }
        let r = residual(candidate);
        iterations += 1;
        if r < best_res {
            x = candidate;
            best_res = r;
        } else {
            break;
        }
    }
    (x, best_res, iterations)
}

/// Inverts `h_p` on the branch `a ≥ 1`: returns `a` with `h_p(a) = y`.
pub fn invert_h(p: f64, y: f64) -> Result<BranchedRoot> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidInput(format!("invert_h needs 0 < p <= 1, got {p}")));
    }
    if !y.is_finite() || y < 1.0 - ENDPOINT_SLACK {
        return Err(Error::OutOfRange { target: y, lo: 1.0, hi: f64::INFINITY });
    }
    if y <= 1.0 {
        return Ok(BranchedRoot { value: 1.0, mirror: 1.0, residual: (1.0 - y).abs(), iterations: 0 });
    }

    let mut hi = 2.0;
    while h_map(p, hi) < y {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NumericalFailure(format!("cannot bracket h_{p}^(-1)({y})")));
        }
    }
    let tol = 1e-12 * (1.0 + y);
    let (value, residual, iterations) = solve_monotone(|a| h_map(p, a), |a| h_derivative(p, a), 1.0, hi, y, true, tol);
    Ok(BranchedRoot { value, mirror: 1.0 / value, residual, iterations })
}

/// Inverts `φ_r` on the branch `a ∈ [1, 2]`.
///
/// Valid targets are `[1, γ(r)]` for `r ≥ 1` and `[γ(r), 1]` for `r ≤ 1`, with
/// `1e-12` slack at both ends. The search runs on the complement `b = 2 − a`
/// so that targets near `γ` (where `b → 0` and `φ` may be steep) keep full
/// relative precision in `b`.
pub fn invert_phi(r: f64, x: f64) -> Result<BranchedRoot> {
    let gamma = gamma_of(r)?;
    let (lo_x, hi_x) = if gamma >= 1.0 { (1.0, gamma) } else { (gamma, 1.0) };
    if !x.is_finite() || x < lo_x - ENDPOINT_SLACK || x > hi_x + ENDPOINT_SLACK {
        return Err(Error::OutOfRange { target: x, lo: lo_x, hi: hi_x });
    }
    let target = x.clamp(lo_x, hi_x);
    let done = |b: f64| {
        let value = 2.0 - b;
        Ok(BranchedRoot { value, mirror: b, residual: (phi_of_complement(r, b) - x).abs(), iterations: 0 })
    };
    if r == 1.0 || target == 1.0 {
        return done(1.0);
    }
    if target == gamma {
        return done(0.0);
    }

    // In b, φ decreases for r > 1 and increases for r < 1.
    let increasing = r < 1.0;
    let tol = 1e-12 * (1.0 + x);
    let (b, _, iterations) = solve_monotone(
        |b| phi_of_complement(r, b),
        |b| phi_complement_derivative(r, b),
        0.0,
        1.0,
        target,
        increasing,
        tol,
    );
    Ok(BranchedRoot { value: 2.0 - b, mirror: b, residual: (phi_of_complement(r, b) - x).abs(), iterations })
}

/// Number of `γ₀` steps needed to climb a ratio `ratio ≥ 1`:
/// `ceil(ln ratio / ln γ₀)`, with a `1e-12` relative guard so exact powers
/// of `γ₀` are not over-counted.
pub fn steps_needed(ratio: f64, gamma0: f64) -> usize {
    if ratio <= 1.0 {
        return 0;
    }
    let v = ratio.ln() / gamma0.ln();
    (v * (1.0 - LEVEL_GUARD)).ceil().max(1.0) as usize
}

/// The integer `m` with `γ₀^m < λ ≤ γ₀^{m+1}` for `λ > 1`.
pub fn chain_level(lambda: f64, gamma0: f64) -> i64 {
    steps_needed(lambda, gamma0) as i64 - 1
}

/// Geometric bridge `x = s₀ ≤ s₁ ≤ … ≤ s_K = y` with `s_k = x·γ₀^k` for
/// `k < K` and consecutive ratios at most `γ₀`.
pub fn scalar_chain(x: f64, y: f64, gamma0: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be positive, got {x}")));
    }
    if !(y >= x) || !y.is_finite() {
        return Err(Error::InvalidInput(format!("need x <= y, got x={x}, y={y}")));
    }
    if !(gamma0 > 1.0) || !gamma0.is_finite() {
        return Err(Error::InvalidInput(format!("gamma0 must exceed 1, got {gamma0}")));
    }
    let k = steps_needed(y / x, gamma0);
    let mut chain: Vec<f64> = (0..k).map(|i| x * gamma0.powi(i as i32)).collect();
    chain.push(y);
    Ok(chain)
}
