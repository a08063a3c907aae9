//! Scalar functions and their lift to symmetric matrices through the
//! spectral decomposition: `f(M) = Q·diag(f(λᵢ))·Qᵀ`.

use std::fmt;
use std::str::FromStr;

use super::eigen::{eig_sym, psd_tolerance, EigenDecomp};
use super::matrix::SymMatrix;
use crate::error::{Error, Result};
use crate::means::representing_function_unchecked;

/// Where a scalar function may be evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Real,
    /// `[0, ∞)`; eigenvalues in `[−εₚ, 0)` are clamped to zero.
    NonNegative,
    /// `(0, ∞)`.
    Positive,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarFunction {
    Power(f64),
    Sqrt,
    Log1p,
    /// `t / (1 + t)`
    Ratio,
    Identity,
    Abs,
    /// `f_{μ,p}(t) = ((1 + t^p)/2)^{1/p}`, with `p = 0` meaning `√t`.
    RepresentingPower(f64),
    Tabulated(MonotoneCubic),
}

impl ScalarFunction {
    pub fn domain(&self) -> Domain {
        match self {
            Self::Identity | Self::Abs | Self::Tabulated(_) => Domain::Real,
            Self::Power(r) if *r >= 0.0 && r.fract() == 0.0 => Domain::Real,
            Self::Power(r) if *r > 0.0 => Domain::NonNegative,
            Self::Power(_) => Domain::Positive,
            Self::RepresentingPower(p) if *p < 0.0 => Domain::Positive,
            Self::Sqrt | Self::Log1p | Self::Ratio | Self::RepresentingPower(_) => Domain::NonNegative,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Power(r) => {
                if r.fract() == 0.0 && r.abs() <= i32::MAX as f64 {
                    t.powi(*r as i32)
                } else {
                    t.powf(*r)
                }
            }
            Self::Sqrt => t.sqrt(),
            Self::Log1p => t.ln_1p(),
            Self::Ratio => t / (1.0 + t),
            Self::Identity => t,
            Self::Abs => t.abs(),
            Self::RepresentingPower(p) => representing_function_unchecked(*p, t),
            Self::Tabulated(spline) => spline.eval(t),
        }
    }

    /// Functions in the built-in catalog known to be operator monotone on `(0, ∞)`.
    pub fn is_known_operator_monotone(&self) -> bool {
        match self {
            Self::Sqrt | Self::Log1p | Self::Ratio | Self::Identity => true,
            Self::Power(r) => (0.0..=1.0).contains(r),
            Self::RepresentingPower(p) => (-1.0..=1.0).contains(p),
            Self::Abs | Self::Tabulated(_) => false,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Power(r) | Self::RepresentingPower(r) if !r.is_finite() => {
                Err(Error::InvalidInput(format!("exponent must be finite, got {r}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power(r) => write!(f, "power:{r}"),
            Self::Sqrt => write!(f, "sqrt"),
            Self::Log1p => write!(f, "log1p"),
            Self::Ratio => write!(f, "ratio"),
            Self::Identity => write!(f, "identity"),
            Self::Abs => write!(f, "abs"),
            Self::RepresentingPower(p) => write!(f, "repr:{p}"),
            Self::Tabulated(s) => write!(f, "tabulated[{} knots]", s.knots.len()),
        }
    }
}

/// Parses `name[:param]`, e.g. `sqrt`, `power:2`, `repr:0.5`.
impl FromStr for ScalarFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let number = |what: &str| -> Result<f64> {
            let raw = param.ok_or_else(|| Error::InvalidInput(format!("`{what}` needs a parameter, e.g. {what}:2")))?;
            let v: f64 = raw.parse().map_err(|_| Error::InvalidInput(format!("bad parameter `{raw}` for `{what}`")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidInput(format!("parameter for `{what}` must be finite")))
            }
        };
        let f = match name.to_ascii_lowercase().as_str() {
            "power" | "pow" => Self::Power(number("power")?),
            "repr" | "representing" => Self::RepresentingPower(number("repr")?),
            other => {
                if param.is_some() {
                    return Err(Error::InvalidInput(format!("`{other}` takes no parameter")));
                }
                match other {
                    "sqrt" => Self::Sqrt,
                    "log1p" => Self::Log1p,
                    "ratio" => Self::Ratio,
                    "identity" | "id" => Self::Identity,
                    "abs" => Self::Abs,
                    _ => return Err(Error::InvalidInput(format!("unknown function `{other}`"))),
                }
            }
        };
        Ok(f)
    }
}

/// Piecewise cubic Hermite interpolant with Fritsch–Carlson slopes, which
/// preserves monotonicity of the tabulated data. Outside the grid it extends
/// linearly with the end slopes.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneCubic {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput("need at least two knots".into()));
        }
        if points.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidInput("knots must be finite".into()));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidInput("knots must be strictly increasing".into()));
        }
        let knots: Vec<f64> = points.iter().map(|p| p.0).collect();
        let values: Vec<f64> = points.iter().map(|p| p.1).collect();
        let n = knots.len();
        let secants: Vec<f64> = (0..n - 1).map(|k| (values[k + 1] - values[k]) / (knots[k + 1] - knots[k])).collect();

        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for k in 1..n - 1 {
            slopes[k] = if secants[k - 1] * secants[k] <= 0.0 { 0.0 } else { 0.5 * (secants[k - 1] + secants[k]) };
        }
        for k in 0..n - 1 {
            if secants[k] == 0.0 {
                slopes[k] = 0.0;
                slopes[k + 1] = 0.0;
                continue;
            }
            let alpha = slopes[k] / secants[k];
            let beta = slopes[k + 1] / secants[k];
            let r = alpha.hypot(beta);
            if r > 3.0 {
                let tau = 3.0 / r;
                slopes[k] = tau * alpha * secants[k];
                slopes[k + 1] = tau * beta * secants[k];
            }
        }
        Ok(Self { knots, values, slopes })
    }

    /// Tabulates `f` on `knots`.
    pub fn sample(knots: &[f64], f: impl Fn(f64) -> f64) -> Result<Self> {
        let pts: Vec<(f64, f64)> = knots.iter().map(|&t| (t, f(t))).collect();
        Self::new(&pts)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.knots.len();
        if t <= self.knots[0] {
            return self.values[0] + self.slopes[0] * (t - self.knots[0]);
        }
        if t >= self.knots[n - 1] {
            return self.values[n - 1] + self.slopes[n - 1] * (t - self.knots[n - 1]);
        }
        let k = self.knots.partition_point(|&x| x <= t) - 1;
        let h = self.knots[k + 1] - self.knots[k];
        let s = (t - self.knots[k]) / h;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.values[k] + h10 * h * self.slopes[k] + h01 * self.values[k + 1] + h11 * h * self.slopes[k + 1]
    }
}

/// Clamps an eigenvalue into `f`'s domain or reports a domain error.
fn admit(lambda: f64, domain: Domain, eps: f64, f: &ScalarFunction) -> Result<f64> {
    match domain {
        Domain::Real => Ok(lambda),
        Domain::NonNegative if lambda >= 0.0 => Ok(lambda),
        Domain::NonNegative if lambda >= -eps => Ok(0.0),
        Domain::Positive if lambda > 0.0 => Ok(lambda),
        _ => Err(Error::Domain(format!("eigenvalue {lambda:e} outside the domain of {f} (PSD tolerance {eps:e})"))),
    }
}

/// Applies `f` to a precomputed decomposition; `eps` is the clamping band.
pub fn apply_to_decomp(e: &EigenDecomp, f: &ScalarFunction, eps: f64) -> Result<SymMatrix> {
    f.validate()?;
    let domain = f.domain();
    let mapped = e.values.iter().map(|&l| admit(l, domain, eps, f).map(|t| f.eval(t))).collect::<Result<Vec<f64>>>()?;
    if let Some(bad) = mapped.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{f} produced non-finite value {bad}")));
    }
    Ok(SymMatrix::from_spectrum(&e.vectors, &mapped))
}

pub fn apply_fun(m: &SymMatrix, f: &ScalarFunction) -> Result<SymMatrix> {
    let e = eig_sym(m)?;
    apply_to_decomp(&e, f, psd_tolerance(m))
}

/// Decomposes `m`, failing with a domain error unless `λ_min > εₚ`.
pub fn require_spd(m: &SymMatrix, what: &str) -> Result<EigenDecomp> {
    let e = eig_sym(m)?;
    let eps = psd_tolerance(m);
    if e.min() <= eps {
        return Err(Error::Domain(format!("{what} is not positive definite (λ_min = {:e}, εₚ = {eps:e})", e.min())));
    }
    Ok(e)
}

/// `(M^{1/2}, M^{−1/2})` from one decomposition of an SPD matrix.
pub fn spd_sqrt_pair(m: &SymMatrix, what: &str) -> Result<(SymMatrix, SymMatrix)> {
    let e = require_spd(m, what)?;
    Ok((e.map(f64::sqrt), e.map(|v| 1.0 / v.sqrt())))
}

/// Square root of a matrix already known to be PSD up to tolerance:
/// every negative eigenvalue is clamped to zero.
pub(crate) fn clamped_sqrt(m: &SymMatrix) -> Result<SymMatrix> {
    Ok(eig_sym(m)?.map(|v| v.max(0.0).sqrt()))
}
