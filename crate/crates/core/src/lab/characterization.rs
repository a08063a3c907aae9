//! Empirical tests of "inequality ⇒ operator monotone" characterizations.
//!
//! For a hypothesis `f(L(A, B)) ≤ f(R(A, B))` the harness searches random
//! pairs for a violation. If none is found but `f` is caught violating
//! monotonicity on some `X ≤ Y`, characterizing hypotheses with an inverse
//! solver are pushed further: the solver builds `(A, B)` with `L = X`,
//! `R = Y` (link by link along a spectral chain when needed), which turns
//! the monotonicity counterexample into an inequality counterexample.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    check_sample_args, compare, random_pair, search, test_monotonicity, SampleOrigin, SampleTag, Verdict,
    VerdictStatus, Witness,
};
use crate::error::{Error, Result};
use crate::inverse::{chain_solve_global, chain_solve_global_below, chain_solve_sqrt, solve_geom_power};
use crate::linalg::{apply_fun, eig_sym, loewner_leq, psd_tolerance, ScalarFunction, SymMatrix};
use crate::means::{arithmetic_mean, kubo_ando_power_mean, min_mean, naive_power_mean};

use super::LAB_TOL;

/// An inequality `f(L(A, B)) ≤ f(R(A, B))` between two means.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Hypothesis {
    /// `f(A♯B) ≤ f(P_μ(p, A, B))`, `0 < p ≤ 1`.
    GeomVsPower(f64),
    /// `f(P_μ(p, A, B)) ≤ f((A+B)/2)`, `0 < p < 1`.
    PowerVsArith(f64),
    /// `f((A+B)/2) ≤ f(P_μ(q, A, B))`, `q > 1`.
    ArithVsPower(f64),
    /// `f(((A^p+B^p)/2)^{1/p}) ≤ f((A+B)/2)`, `1/2 ≤ p ≤ 1`.
    NaivePowerVsArith(f64),
    /// `f((A+B)/2) ≤ f(((A^q+B^q)/2)^{1/q})`, `q ≥ 1`.
    ArithVsNaivePower(f64),
    /// `f((A+B−|A−B|)/2) ≤ f(A♯B)`.
    ReverseAGM,
}

impl Hypothesis {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::GeomVsPower(p) => p > 0.0 && p <= 1.0,
            Self::PowerVsArith(p) => p > 0.0 && p < 1.0,
            Self::ArithVsPower(q) => q > 1.0 && q.is_finite(),
            Self::NaivePowerVsArith(p) => (0.5..=1.0).contains(&p),
            Self::ArithVsNaivePower(q) => q >= 1.0 && q.is_finite(),
            Self::ReverseAGM => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("parameter out of range for {self}")))
        }
    }

    /// Whether holding for all SPD pairs forces operator monotonicity.
    /// Among the naive hypotheses only `p = 1/2` is known to characterize.
    pub fn is_characterizing(&self) -> bool {
        match *self {
            Self::NaivePowerVsArith(p) => p == 0.5,
            Self::ArithVsNaivePower(_) => false,
            _ => true,
        }
    }

    /// The two means `(L(A, B), R(A, B))`.
    pub fn sides(&self, a: &SymMatrix, b: &SymMatrix) -> Result<(SymMatrix, SymMatrix)> {
        Ok(match *self {
            Self::GeomVsPower(p) => (kubo_ando_power_mean(0.0, a, b)?, kubo_ando_power_mean(p, a, b)?),
            Self::PowerVsArith(p) => (kubo_ando_power_mean(p, a, b)?, arithmetic_mean(a, b)),
            Self::ArithVsPower(q) => (arithmetic_mean(a, b), kubo_ando_power_mean(q, a, b)?),
            Self::NaivePowerVsArith(p) => (naive_power_mean(p, a, b)?, arithmetic_mean(a, b)),
            Self::ArithVsNaivePower(q) => (arithmetic_mean(a, b), naive_power_mean(q, a, b)?),
            Self::ReverseAGM => (min_mean(a, b)?, kubo_ando_power_mean(0.0, a, b)?),
        })
    }

    fn relation(&self) -> String {
        let (l, r) = match *self {
            Self::GeomVsPower(p) => ("A#B".to_string(), format!("P_mu({p})")),
            Self::PowerVsArith(p) => (format!("P_mu({p})"), "(A+B)/2".to_string()),
            Self::ArithVsPower(q) => ("(A+B)/2".to_string(), format!("P_mu({q})")),
            Self::NaivePowerVsArith(p) => (format!("naive({p})"), "(A+B)/2".to_string()),
            Self::ArithVsNaivePower(q) => ("(A+B)/2".to_string(), format!("naive({q})")),
            Self::ReverseAGM => ("(A+B-|A-B|)/2".to_string(), "A#B".to_string()),
        };
        format!("f({l}) <= f({r})")
    }

    /// Pairs `(A, B)` with `L(A, B) = X` and `R(A, B) = Y`, or consecutive
    /// chain elements of `X ≤ Y`; `None` if no constructive solver exists.
    fn realize(&self, x: &SymMatrix, y: &SymMatrix) -> Result<Option<Vec<(SymMatrix, SymMatrix)>>> {
        let chain = match *self {
            Self::GeomVsPower(p) => {
                let s = solve_geom_power(p, x, y)?;
                return Ok(Some(vec![(s.a, s.b)]));
            }
            Self::ArithVsPower(q) => chain_solve_global(q, x, y, None)?,
            Self::PowerVsArith(p) => chain_solve_global_below(p, x, y, None)?,
            Self::NaivePowerVsArith(0.5) => chain_solve_sqrt(x, y)?,
            _ => return Ok(None),
        };
        Ok(Some(chain.links.into_iter().filter_map(|l| l.solution.map(|s| (s.a, s.b))).collect()))
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GeomVsPower(p) => write!(f, "geom-vs-power:{p}"),
            Self::PowerVsArith(p) => write!(f, "power-vs-arith:{p}"),
            Self::ArithVsPower(q) => write!(f, "arith-vs-power:{q}"),
            Self::NaivePowerVsArith(p) => write!(f, "naive-power-vs-arith:{p}"),
            Self::ArithVsNaivePower(q) => write!(f, "arith-vs-naive-power:{q}"),
            Self::ReverseAGM => write!(f, "reverse-agm"),
        }
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, v)) => {
                let v: f64 = v.trim().parse().map_err(|_| Error::InvalidInput(format!("bad parameter in '{s}'")))?;
                (n.trim(), Some(v))
            }
            None => (s.trim(), None),
        };
        let need = |ctor: fn(f64) -> Hypothesis| {
            param.map(ctor).ok_or_else(|| Error::InvalidInput(format!("'{name}' needs a parameter")))
        };
        let hyp = match name {
            "geom-vs-power" => need(Self::GeomVsPower)?,
            "power-vs-arith" => need(Self::PowerVsArith)?,
            "arith-vs-power" => need(Self::ArithVsPower)?,
            "naive-power-vs-arith" => need(Self::NaivePowerVsArith)?,
            "arith-vs-naive-power" => need(Self::ArithVsNaivePower)?,
            "reverse-agm" if param.is_none() => Self::ReverseAGM,
            _ => return Err(Error::InvalidInput(format!("unknown hypothesis '{s}'"))),
        };
        hyp.validate()?;
        Ok(hyp)
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterizationReport {
    pub hypothesis: Hypothesis,
    pub function: String,
    pub characterizing: bool,
    pub inequality: Verdict,
    pub monotonicity: Verdict,
    /// False only when a characterizing hypothesis held on every sample
    /// while `f` failed monotonicity.
    pub consistent: bool,
    pub note: String,
}

/// Tests `hyp` for `f` on random pairs, tests monotonicity of `f`, and
/// cross-checks the two.
pub fn test_characterization(
    f: &ScalarFunction,
    hyp: Hypothesis,
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<CharacterizationReport> {
    hyp.validate()?;
    check_sample_args(dim, samples)?;
    let monotonicity = test_monotonicity(f, dim, samples, seed)?;
    let relation = hyp.relation();
    let mut inequality = search(samples, |index| {
        let (a, b) = random_pair(seed, index, dim)?;
        let (l, r) = hyp.sides(&a, &b)?;
        let tag = SampleTag { seed, index, origin: SampleOrigin::Random };
        compare(&relation, &a, &b, apply_fun(&l, f)?, apply_fun(&r, f)?, tag)
    })?;

    if inequality.holds() {
        if let Some(w) = &monotonicity.witness {
            if let Some(found) = constructive_search(f, hyp, w, samples)? {
                inequality = Verdict {
                    status: VerdictStatus::Violated,
                    samples_run: found.sample_index + 1,
                    witness: Some(found),
                };
            }
        }
    }

    let characterizing = hyp.is_characterizing();
    let anomaly = inequality.holds() && monotonicity.is_violated();
    let note = match (anomaly, characterizing, inequality.holds()) {
        (true, true, _) => "inequality held on every sample although f is not monotone: numerical anomaly",
        (true, false, _) => "inequality holds while f is not operator monotone: it does not characterize",
        (false, _, true) => "no counterexample found; search exhausted, not a proof",
        (false, _, false) => "inequality violated",
    };
    Ok(CharacterizationReport {
        hypothesis: hyp,
        function: f.to_string(),
        characterizing,
        inequality,
        monotonicity,
        consistent: !(anomaly && characterizing),
        note: note.to_string(),
    })
}

/// Turns a monotonicity counterexample `f(X) ≰ f(Y)` into pairs realizing
/// `L = Zₖ`, `R = Zₖ₊₁` and returns the first pair violating the
/// hypothesis. Indices continue after the random samples.
fn constructive_search(f: &ScalarFunction, hyp: Hypothesis, mono: &Witness, samples: u64) -> Result<Option<Witness>> {
    let Some((x, y)) = strictly_positive_counterexample(f, &mono.a, &mono.b)? else {
        return Ok(None);
    };
    let pairs = match hyp.realize(&x, &y) {
        Ok(Some(pairs)) => pairs,
        Ok(None) | Err(_) => return Ok(None),
    };
    let relation = hyp.relation();
    for (k, (a, b)) in pairs.iter().enumerate() {
        let (l, r) = hyp.sides(a, b)?;
        let tag = SampleTag { seed: mono.seed, index: samples + k as u64, origin: SampleOrigin::Constructed };
        if let Some(w) = compare(&relation, a, b, apply_fun(&l, f)?, apply_fun(&r, f)?, tag)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The solvers need `X > 0`; shift a singular counterexample by a small
/// multiple of the identity as long as it stays a counterexample.
fn strictly_positive_counterexample(
    f: &ScalarFunction,
    x: &SymMatrix,
    y: &SymMatrix,
) -> Result<Option<(SymMatrix, SymMatrix)>> {
    let scale = 1.0 + x.max_abs();
    for shift in [0.0, 1e-6, 1e-4, 1e-2] {
        let id = SymMatrix::scalar(x.dim(), shift * scale);
        let (xs, ys) = (x + &id, y + &id);
        if eig_sym(&xs)?.min() <= psd_tolerance(&xs) {
            continue;
        }
        if !loewner_leq(&apply_fun(&xs, f)?, &apply_fun(&ys, f)?, LAB_TOL)?.holds {
            return Ok(Some((xs, ys)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop31Report {
    pub q: f64,
    pub r: f64,
    /// `((A+B)/2)^r ≤ (A^r+B^r)/2`, `(A^r+B^r)/2 ≤ ((A^q+B^q)/2)^{r/q}`,
    /// `((A^q+B^q)/2)^{r/q} ≤ [((A^q+B^q)/2)^{1/q}]^r`.
    pub links: Vec<Verdict>,
    /// The resulting `f((A+B)/2) ≤ f(((A^q+B^q)/2)^{1/q})` for `f = t^r`.
    pub combined: Verdict,
    pub monotonicity: Verdict,
    /// Every link and the combined inequality hold while `t^r` fails monotonicity.
    pub demonstrated: bool,
}

/// For `q > 1` and `1 < r ≤ min(2, q)`, checks that `f(t) = t^r` satisfies
/// `f((A+B)/2) ≤ f(((A^q+B^q)/2)^{1/q})` through the three links of its
/// proof, and that `f` is nevertheless not operator monotone.
pub fn prop31_counterexample(q: f64, r: f64, dim: usize, samples: u64, seed: u64) -> Result<Prop31Report> {
    if !(q > 1.0 && q.is_finite()) || !(r > 1.0 && r <= q.min(2.0)) {
        return Err(Error::InvalidInput(format!("need q > 1 and 1 < r <= min(2, q), got q={q}, r={r}")));
    }
    check_sample_args(dim, samples)?;
    let pow = |m: &SymMatrix, e: f64| apply_fun(m, &ScalarFunction::Power(e));
    let labels = [
        "((A+B)/2)^r <= (A^r+B^r)/2",
        "(A^r+B^r)/2 <= ((A^q+B^q)/2)^(r/q)",
        "((A^q+B^q)/2)^(r/q) <= [((A^q+B^q)/2)^(1/q)]^r",
    ];
    let mut links = Vec::with_capacity(3);
    for (k, label) in labels.iter().enumerate() {
        links.push(search(samples, |index| {
            let (a, b) = random_pair(seed, index, dim)?;
            let mq = arithmetic_mean(&pow(&a, q)?, &pow(&b, q)?);
            let (lhs, rhs) = match k {
                0 => (pow(&arithmetic_mean(&a, &b), r)?, arithmetic_mean(&pow(&a, r)?, &pow(&b, r)?)),
                1 => (arithmetic_mean(&pow(&a, r)?, &pow(&b, r)?), pow(&mq, r / q)?),
                _ => (pow(&mq, r / q)?, pow(&pow(&mq, 1.0 / q)?, r)?),
            };
            compare(label, &a, &b, lhs, rhs, SampleTag { seed, index, origin: SampleOrigin::Random })
        })?);
    }
    let f = ScalarFunction::Power(r);
    let combined = test_characterization(&f, Hypothesis::ArithVsNaivePower(q), dim, samples, seed)?;
    let demonstrated =
        links.iter().all(Verdict::holds) && combined.inequality.holds() && combined.monotonicity.is_violated();
    Ok(Prop31Report { q, r, links, combined: combined.inequality, monotonicity: combined.monotonicity, demonstrated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_round_trips_through_text() {
        for h in [
            Hypothesis::GeomVsPower(0.5),
            Hypothesis::PowerVsArith(0.25),
            Hypothesis::ArithVsPower(2.0),
            Hypothesis::NaivePowerVsArith(0.5),
            Hypothesis::ArithVsNaivePower(3.0),
            Hypothesis::ReverseAGM,
        ] {
            assert_eq!(h.to_string().parse::<Hypothesis>().unwrap(), h);
        }
        assert!("arith-vs-power:1".parse::<Hypothesis>().is_err());
        assert!("geom-vs-power".parse::<Hypothesis>().is_err());
        assert!("nonsense:1".parse::<Hypothesis>().is_err());
    }

    #[test]
    fn sqrt_passes_geom_vs_power() {
        let rep = test_characterization(&ScalarFunction::Sqrt, Hypothesis::GeomVsPower(0.5), 3, 100, 4).unwrap();
        assert!(rep.inequality.holds() && rep.monotonicity.holds() && rep.consistent);
    }

    #[test]
    fn square_fails_arith_vs_power() {
        let rep = test_characterization(&ScalarFunction::Power(2.0), Hypothesis::ArithVsPower(2.0), 2, 50, 4).unwrap();
        assert!(rep.inequality.is_violated() || rep.monotonicity.is_violated());
        assert!(rep.consistent);
    }

    #[test]
    fn naive_counterexample_rejects_bad_exponents() {
        assert!(prop31_counterexample(2.0, 1.0, 2, 5, 0).is_err());
        assert!(prop31_counterexample(1.5, 1.8, 2, 5, 0).is_err());
        assert!(prop31_counterexample(1.0, 1.0, 2, 5, 0).is_err());
    }
}
