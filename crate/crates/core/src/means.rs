//! Scalar and matrix means.
//!
//! The Kubo-Ando power mean is
//!
//! ```text
//! P_μ(p, A, B) = A^{1/2} f_{μ,p}(A^{-1/2} B A^{-1/2}) A^{1/2},   f_{μ,p}(t) = ((1 + t^p)/2)^{1/p}
//! ```
//!
//! and the naive power mean is `((A^p + B^p)/2)^{1/p}`. The two coincide on
//! commuting pairs; only the former is congruence invariant.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{apply_fun, require_spd, spd_sqrt_pair, ScalarFunction, SymMatrix};

/// Smallest exponent accepted for the naive power mean.
pub const NAIVE_MIN_P: f64 = 1e-3;

/// Below this `|p|` the representing function switches to an
/// `expm1`/`ln_1p` evaluation that stays accurate as `p → 0`.
const SMALL_P: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeanSpec {
    /// `P_μ(p, ·, ·)`; `p = 0` is the geometric mean.
    KuboAndoPower(f64),
    /// `((A^p + B^p)/2)^{1/p}`, `p ≥ 1e-3`.
    NaivePower(f64),
    Geometric,
    Arithmetic,
    /// `(A + B − |A − B|)/2`.
    MinMean,
}

impl MeanSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::KuboAndoPower(p) if !(p >= 0.0 && p.is_finite()) => {
                Err(Error::InvalidInput(format!("Kubo-Ando power mean needs a finite p >= 0, got {p}")))
            }
            Self::NaivePower(p) if !(p >= NAIVE_MIN_P && p.is_finite()) => {
                Err(Error::InvalidInput(format!("naive power mean needs a finite p >= {NAIVE_MIN_P}, got {p}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MeanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KuboAndoPower(p) => write!(f, "P_mu({p})"),
            Self::NaivePower(p) => write!(f, "naive({p})"),
            Self::Geometric => write!(f, "geometric"),
            Self::Arithmetic => write!(f, "arithmetic"),
            Self::MinMean => write!(f, "min"),
        }
    }
}

/// `f_{μ,p}(t)` without argument checks. `p = 0` gives `√t`.
pub(crate) fn representing_function_unchecked(p: f64, t: f64) -> f64 {
    if p == 0.0 {
        t.sqrt()
    } else if p == 1.0 {
        0.5 * (1.0 + t)
    } else if p.abs() < SMALL_P {
        // ((1 + t^p)/2)^{1/p} = exp(ln(1 + (t^p − 1)/2) / p)
        ((0.5 * (p * t.ln()).exp_m1()).ln_1p() / p).exp()
    } else {
        (0.5 * (1.0 + t.powf(p))).powf(1.0 / p)
    }
}

/// `f_{μ,p}(t) = ((1 + t^p)/2)^{1/p}` for `t > 0`.
pub fn representing_function(p: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!("t must be positive and finite, got {t}")));
    }
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("p must be finite, got {p}")));
    }
    Ok(representing_function_unchecked(p, t))
}

/// `μ(p, a, b) = ((a^p + b^p)/2)^{1/p}`, with `p = 0` the geometric limit `√(ab)`.
pub fn scalar_power_mean(p: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput(format!("a and b must be positive, got a={a}, b={b}")));
    }
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("p must be finite, got {p}")));
    }
    Ok(if p == 0.0 {
        (a * b).sqrt()
    } else if p == 1.0 {
        0.5 * (a + b)
    } else if p.abs() < SMALL_P {
        a * representing_function_unchecked(p, b / a)
    } else {
        (0.5 * (a.powf(p) + b.powf(p))).powf(1.0 / p)
    })
}

pub fn matrix_mean(spec: MeanSpec, a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    spec.validate()?;
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!("dimension mismatch: {} vs {}", a.dim(), b.dim())));
    }
    require_spd(a, "A")?;
    require_spd(b, "B")?;
    match spec {
        MeanSpec::Arithmetic => Ok(arithmetic_mean(a, b)),
        MeanSpec::Geometric => kubo_ando_power_mean(0.0, a, b),
        MeanSpec::KuboAndoPower(p) => kubo_ando_power_mean(p, a, b),
        MeanSpec::NaivePower(p) => naive_power_mean(p, a, b),
        MeanSpec::MinMean => min_mean(a, b),
    }
}

pub fn arithmetic_mean(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    (a + b).scale(0.5)
}

/// `P_μ(p, A, B)` for SPD `A` and PSD `B` (up to clamping).
pub(crate) fn kubo_ando_power_mean(p: f64, a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    let (root, inv_root) = spd_sqrt_pair(a, "A")?;
    let t = inv_root.sandwich(b);
    let ft = apply_fun(&t, &ScalarFunction::RepresentingPower(p))?;
    Ok(root.sandwich(&ft))
}

/// `((A^p + B^p)/2)^{1/p}` for PSD `A`, `B` (up to clamping) and `p > 0`.
pub(crate) fn naive_power_mean(p: f64, a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    if p == 1.0 {
        return Ok(arithmetic_mean(a, b));
    }
    let ap = apply_fun(a, &ScalarFunction::Power(p))?;
    let bp = apply_fun(b, &ScalarFunction::Power(p))?;
    apply_fun(&arithmetic_mean(&ap, &bp), &ScalarFunction::Power(1.0 / p))
}

pub(crate) fn min_mean(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    let gap = apply_fun(&(a - b), &ScalarFunction::Abs)?;
    Ok((&(a + b) - &gap).scale(0.5))
}

/// `Φ(A, B) = Tr((A + B)/2 − ((A^p + B^p)/2)^{1/p})` for `1/2 ≤ p ≤ 1`.
pub fn divergence_phi(p: f64, a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    if !(0.5..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("divergence needs 1/2 <= p <= 1, got {p}")));
    }
    let naive = matrix_mean(MeanSpec::NaivePower(p), a, b)?;
    Ok((&arithmetic_mean(a, b) - &naive).trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn scalar_examples() {
        assert!(close(scalar_power_mean(2.0, 1.0, 7.0).unwrap(), 5.0, 1e-15));
        assert_eq!(scalar_power_mean(1.0, 3.0, 8.0).unwrap(), 5.5);
        assert_eq!(scalar_power_mean(0.0, 4.0, 9.0).unwrap(), 6.0);
        assert!(scalar_power_mean(1.0, 0.0, 1.0).is_err());
        assert!(scalar_power_mean(1.0, 1.0, -2.0).is_err());
    }

    #[test]
    fn scalar_mean_monotone_in_p() {
        let ps = [-2.0, -0.5, -0.01, 0.0, 0.001, 0.04, 0.06, 0.5, 1.0, 1.5, 3.0];
        let vals: Vec<f64> = ps.iter().map(|&p| scalar_power_mean(p, 0.3, 7.0).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1] + 1e-15), "{vals:?}");
    }

    #[test]
    fn representing_function_examples() {
        assert_eq!(representing_function(1.0, 3.0).unwrap(), 2.0);
        assert!(close(representing_function(2.0, 7.0).unwrap(), 5.0, 1e-15));
        assert_eq!(representing_function(0.0, 4.0).unwrap(), 2.0);
        assert!(representing_function(1.0, 0.0).is_err());
        for &p in &[0.01, 0.3, 1.0, 2.5] {
            assert!(close(representing_function(p, 1.0).unwrap(), 1.0, 1e-15));
            let t: f64 = 3.7;
            let lhs = t * representing_function(p, 1.0 / t).unwrap();
            assert!(close(lhs, representing_function(p, t).unwrap(), 1e-14));
        }
    }

    #[test]
    fn small_p_branch_is_continuous() {
        for &t in &[0.01, 0.5, 2.0, 50.0] {
            let below = representing_function_unchecked(SMALL_P * (1.0 - 1e-12), t);
            let above = representing_function_unchecked(SMALL_P, t);
            assert!(close(below, above, 1e-10));
        }
    }

    #[test]
    fn matrix_examples() {
        let a = SymMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]).unwrap();
        for spec in [
            MeanSpec::Arithmetic,
            MeanSpec::Geometric,
            MeanSpec::KuboAndoPower(0.5),
            MeanSpec::KuboAndoPower(2.0),
            MeanSpec::NaivePower(0.5),
            MeanSpec::MinMean,
        ] {
            assert!(matrix_mean(spec, &a, &a).unwrap().max_diff(&a) < 1e-12, "{spec}");
        }
        let g = matrix_mean(MeanSpec::Geometric, &SymMatrix::diag(&[4.0, 1.0]), &SymMatrix::diag(&[9.0, 1.0])).unwrap();
        assert!(g.max_diff(&SymMatrix::diag(&[6.0, 1.0])) < 1e-14);
        let k = matrix_mean(MeanSpec::KuboAndoPower(2.0), &SymMatrix::diag(&[1.0]), &SymMatrix::diag(&[7.0])).unwrap();
        assert!((k.get(0, 0) - 5.0).abs() < 1e-14);
        let m = matrix_mean(MeanSpec::MinMean, &SymMatrix::diag(&[1.0, 5.0]), &SymMatrix::diag(&[3.0, 2.0])).unwrap();
        assert_eq!(m, SymMatrix::diag(&[1.0, 2.0]));
    }

    #[test]
    fn matrix_mean_rejects_bad_input() {
        let a = SymMatrix::identity(2);
        let singular = SymMatrix::diag(&[1.0, 0.0]);
        assert!(matches!(matrix_mean(MeanSpec::Geometric, &a, &singular), Err(Error::Domain(_))));
        assert!(matrix_mean(MeanSpec::NaivePower(1e-4), &a, &a).is_err());
        assert!(matrix_mean(MeanSpec::KuboAndoPower(-1.0), &a, &a).is_err());
        assert!(matrix_mean(MeanSpec::Arithmetic, &a, &SymMatrix::identity(3)).is_err());
    }

    #[test]
    fn divergence_examples() {
        let one = SymMatrix::diag(&[1.0]);
        let x = SymMatrix::diag(&[1.5]);
        // 1.25 − ((1 + √1.5)/2)²
        assert!((divergence_phi(0.5, &one, &x).unwrap() - 0.012_627_564_304_205_53).abs() < 1e-12);
        let a = SymMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = SymMatrix::diag(&[0.5, 4.0]);
        assert!(divergence_phi(0.7, &a, &a).unwrap().abs() < 1e-12);
        assert!(divergence_phi(1.0, &a, &b).unwrap().abs() < 1e-12);
        assert!(divergence_phi(0.5, &a, &b).unwrap() > 0.0);
        assert!(divergence_phi(0.4, &a, &b).is_err());
    }
}
