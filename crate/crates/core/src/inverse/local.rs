use super::{check_same_dim, require_leq, require_psd, InverseSolution, STRICT_BAND};
use crate::error::{Error, Result};
use crate::linalg::{clamped_sqrt, eig_sym, loewner_leq, spd_sqrt_pair, SymMatrix};
use crate::means::{arithmetic_mean, kubo_ando_power_mean, naive_power_mean};
use crate::scalar::{gamma_of, invert_h, invert_phi};

/// Finds `A, B` with `A♯B = X` and `P_μ(p, A, B) = Y` for `X ≤ Y`.
///
/// In the frame `Y₀ = X^{-1/2} Y X^{-1/2} = U diag(λ) Uᵀ` take
/// `A₀ = U diag(aᵢ) Uᵀ` with `h_p(aᵢ) = λᵢ` and `B₀ = A₀^{-1}`, so that
/// `A₀♯B₀ = I` and `P_μ(p, A₀, B₀) = Y₀`; then congruence back by `X^{1/2}`.
pub fn solve_geom_power(p: f64, x: &SymMatrix, y: &SymMatrix) -> Result<InverseSolution> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidInput(format!("need 0 < p <= 1, got {p}")));
    }
    check_same_dim(x, y)?;
    let (root, inv_root) = spd_sqrt_pair(x, "X")?;
    require_leq(x, y, "X <= Y")?;

    let frame = eig_sym(&inv_root.sandwich(y))?;
    let roots = frame.values.iter().map(|&l| invert_h(p, l.max(1.0))).collect::<Result<Vec<_>>>()?;
    let a0 = SymMatrix::from_spectrum(&frame.vectors, &roots.iter().map(|r| r.value).collect::<Vec<_>>());
    let b0 = SymMatrix::from_spectrum(&frame.vectors, &roots.iter().map(|r| r.mirror).collect::<Vec<_>>());
    let a = root.sandwich(&a0);
    let b = root.sandwich(&b0);

    let residual_x = kubo_ando_power_mean(0.0, &a, &b)?.max_diff(x);
    let residual_y = kubo_ando_power_mean(p, &a, &b)?.max_diff(y);
    InverseSolution::certify(a, b, residual_x, residual_y, x, y, "X <= Y")
}

/// Finds `A, B` with `(A + B)/2 = X` and `P_μ(r, A, B) = Y`.
///
/// For `r ≥ 1` the hypothesis is `X ≤ Y ≤ (γ − 1e-9)X`; for `r ≤ 1` it is
/// `(γ + 1e-9)X ≤ Y ≤ X`, with `γ = 2^{1−1/r}`. Each eigenvalue `λᵢ` of `Y₀`
/// is matched by `φ_r(δᵢ) = λᵢ`, `A₀ = U diag(δᵢ) Uᵀ`, `B₀ = 2I − A₀`.
pub fn solve_arith_power_local(r: f64, x: &SymMatrix, y: &SymMatrix) -> Result<InverseSolution> {
    let gamma = gamma_of(r)?;
    check_same_dim(x, y)?;
    let (root, inv_root) = spd_sqrt_pair(x, "X")?;

    let condition = if r == 1.0 {
        require_leq(x, y, "X <= Y")?;
        require_leq(y, x, "Y <= X")?;
        "X = Y"
    } else if r > 1.0 {
        require_leq(x, y, "X <= Y")?;
        require_leq(y, &x.scale(gamma - STRICT_BAND), "Y < gamma X")?;
        "X <= Y < gamma X"
    } else {
        require_leq(&x.scale(gamma + STRICT_BAND), y, "gamma X < Y")?;
        require_leq(y, x, "Y <= X")?;
        "gamma X < Y <= X"
    };

    let (lo, hi) = if gamma >= 1.0 { (1.0, gamma) } else { (gamma, 1.0) };
    let frame = eig_sym(&inv_root.sandwich(y))?;
    let roots = frame.values.iter().map(|&l| invert_phi(r, l.clamp(lo, hi))).collect::<Result<Vec<_>>>()?;
    let a0 = SymMatrix::from_spectrum(&frame.vectors, &roots.iter().map(|r| r.value).collect::<Vec<_>>());
    let b0 = SymMatrix::from_spectrum(&frame.vectors, &roots.iter().map(|r| r.mirror).collect::<Vec<_>>());
    let a = root.sandwich(&a0);
    let b = root.sandwich(&b0);

    let residual_x = arithmetic_mean(&a, &b).max_diff(x);
    let residual_y = kubo_ando_power_mean(r, &a, &b)?.max_diff(y);
    InverseSolution::certify(a, b, residual_x, residual_y, x, y, condition)
}

/// Closed form for `((A^{1/2} + B^{1/2})/2)² = X`, `(A + B)/2 = Y` under
/// `X ≤ Y ≤ (2 − 1e-9)X`:
///
/// ```text
/// A = (X^{1/2} + (Y − X)^{1/2})²,   B = (X^{1/2} − (Y − X)^{1/2})²
/// ```
///
/// `Y − X ≤ X` and operator monotonicity of the square root make
/// `X^{1/2} − (Y − X)^{1/2}` PSD, which is what lets `B^{1/2}` be read back
/// as that difference. The solver checks this explicitly.
pub fn solve_sqrt_arith(x: &SymMatrix, y: &SymMatrix) -> Result<InverseSolution> {
    check_same_dim(x, y)?;
    require_psd(x, "X")?;
    require_leq(x, y, "X <= Y")?;
    require_leq(y, &x.scale(2.0 - STRICT_BAND), "Y < 2X")?;

    let sx = clamped_sqrt(x)?;
    let sd = clamped_sqrt(&(y - x))?;
    if !loewner_leq(&sd, &sx, super::LOEWNER_TOL)?.holds {
        return Err(Error::NumericalFailure("X^(1/2) - (Y - X)^(1/2) is not PSD".into()));
    }
    let plus = &sx + &sd;
    let minus = &sx - &sd;
    let a = plus.square();
    let b = minus.square();

    let root_b = clamped_sqrt(&b)?;
    let bound = InverseSolution::residual_bound(x, y);
    let drift = root_b.max_diff(&minus);
    if drift > bound {
        return Err(Error::NumericalFailure(format!("B^(1/2) differs from X^(1/2) - (Y - X)^(1/2) by {drift:e}")));
    }
    let half_sum = arithmetic_mean(&clamped_sqrt(&a)?, &root_b);
    let residual_x = half_sum.square().max_diff(x);
    let residual_y = arithmetic_mean(&a, &b).max_diff(y);
    InverseSolution::certify(a, b, residual_x, residual_y, x, y, "X <= Y < 2X")
}

/// Finds `A, B` with `(A + B)/2 = X` and `((A² + B²)/2)^{1/2} = Y` by solving
/// the square-root problem for `(X², Y²)` and taking square roots.
///
/// Accepts `X² ≤ Y² ≤ (2 − 1e-9)X²`. Inputs with `Y² ≰ √2·X²` are solved but
/// tagged with a warning, since that narrower band is the one sometimes
/// quoted for this problem.
pub fn solve_arith_quadratic(x: &SymMatrix, y: &SymMatrix) -> Result<InverseSolution> {
    check_same_dim(x, y)?;
    spd_sqrt_pair(x, "X")?;
    spd_sqrt_pair(y, "Y")?;
    let x2 = x.square();
    let y2 = y.square();
    let warning = (!loewner_leq(&y2, &x2.scale(std::f64::consts::SQRT_2), super::LOEWNER_TOL)?.holds)
        .then(|| "Y^2 lies above sqrt(2) X^2 (inside the admissible band up to 2 X^2)".to_string());

    let inner = solve_sqrt_arith(&x2, &y2).map_err(|e| match e {
        Error::HypothesisViolated(msg) => Error::HypothesisViolated(format!("squared problem: {msg}")),
        other => other,
    })?;
    let a = clamped_sqrt(&inner.a)?;
    let b = clamped_sqrt(&inner.b)?;

    let residual_x = arithmetic_mean(&a, &b).max_diff(x);
    let residual_y = naive_power_mean(2.0, &a, &b)?.max_diff(y);
    let mut sol = InverseSolution::certify(a, b, residual_x, residual_y, x, y, "X^2 <= Y^2 < 2X^2")?;
    sol.warning = warning;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(v: f64) -> SymMatrix {
        SymMatrix::diag(&[v])
    }

    #[test]
    fn geom_power_examples() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = solve_geom_power(0.5, &x, &x).unwrap();
        assert!(s.a.max_diff(&x) < 1e-12 && s.b.max_diff(&x) < 1e-12);

        let s = solve_geom_power(1.0, &one(1.0), &one(1.25)).unwrap();
        assert!((s.a.get(0, 0) - 2.0).abs() < 1e-11);
        assert!((s.b.get(0, 0) - 0.5).abs() < 1e-11);

        let s = solve_geom_power(1.0, &SymMatrix::identity(2), &SymMatrix::diag(&[1.25, 1.0])).unwrap();
        assert!(s.a.max_diff(&SymMatrix::diag(&[2.0, 1.0])) < 1e-11);
        assert!(s.b.max_diff(&SymMatrix::diag(&[0.5, 1.0])) < 1e-11);
    }

    #[test]
    fn geom_power_errors() {
        let i = SymMatrix::identity(2);
        assert!(matches!(solve_geom_power(0.5, &SymMatrix::scalar(2, 2.0), &i), Err(Error::HypothesisViolated(_))));
        assert!(matches!(solve_geom_power(0.5, &SymMatrix::diag(&[1.0, 0.0]), &i), Err(Error::Domain(_))));
        assert!(matches!(solve_geom_power(1.5, &i, &i), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn arith_power_examples() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        for r in [0.5, 1.0, 2.0] {
            let s = solve_arith_power_local(r, &x, &x).unwrap();
            assert!(s.a.max_diff(&x) < 1e-12 && s.b.max_diff(&x) < 1e-12);
        }
        let s = solve_arith_power_local(2.0, &one(1.0), &one(1.25f64.sqrt())).unwrap();
        assert!((s.a.get(0, 0) - 1.5).abs() < 1e-11);
        assert!((s.b.get(0, 0) - 0.5).abs() < 1e-11);
        assert!(matches!(solve_arith_power_local(2.0, &one(1.0), &one(1.5)), Err(Error::HypothesisViolated(_))));
        // r < 1: Y must sit between gamma X and X
        let s = solve_arith_power_local(0.5, &one(2.0), &one(1.5)).unwrap();
        assert!(s.residual_y < 1e-12);
        assert!(solve_arith_power_local(0.5, &one(2.0), &one(0.9)).is_err());
    }

    #[test]
    fn sqrt_arith_examples() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = solve_sqrt_arith(&x, &x).unwrap();
        assert!(s.a.max_diff(&x) < 1e-12 && s.b.max_diff(&x) < 1e-12);

        let s = solve_sqrt_arith(&one(1.0), &one(1.5)).unwrap();
        assert!((s.a.get(0, 0) - 2.914_213_562_373_095).abs() < 1e-12);
        assert!((s.b.get(0, 0) - 0.085_786_437_626_904_92).abs() < 1e-12);
        assert!(s.residual_x <= 1e-10 && s.residual_y <= 1e-10);

        assert!(matches!(solve_sqrt_arith(&one(1.0), &one(2.5)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn arith_quadratic_examples() {
        let x = SymMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = solve_arith_quadratic(&x, &x).unwrap();
        assert!(s.a.max_diff(&x) < 1e-12 && s.b.max_diff(&x) < 1e-12);
        assert!(s.warning.is_none());

        let s = solve_arith_quadratic(&one(1.0), &one(1.25f64.sqrt())).unwrap();
        assert!((s.a.get(0, 0) - 1.5).abs() < 1e-12);
        assert!((s.b.get(0, 0) - 0.5).abs() < 1e-12);

        assert!(matches!(solve_arith_quadratic(&one(1.0), &one(1.5)), Err(Error::HypothesisViolated(_))));

        // Y² = 1.6 X² sits in the band (√2, 2)
        let s = solve_arith_quadratic(&one(1.0), &one(1.6f64.sqrt())).unwrap();
        assert!(s.warning.is_some());
    }
}
