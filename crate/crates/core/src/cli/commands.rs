use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::{parse_matrix_file, CliError, RunReport, EXIT_INPUT, EXIT_OK, EXIT_VIOLATED};
use crate::error::Error;
use crate::inverse::{
    chain_solve_global, chain_solve_global_below, chain_solve_sqrt, explore_open_problem, solve_arith_power_local,
    solve_arith_quadratic, solve_geom_power, solve_sqrt_arith, ChainWitness, ExploreStatus, InverseSolution,
};
use crate::lab::{
    check_mean_inequalities, prop31_counterexample, test_characterization, test_monotonicity, Hypothesis,
};
use crate::linalg::{ScalarFunction, SymMatrix};
use crate::means::{matrix_mean, MeanSpec};

#[derive(Parser, Debug)]
#[command(name = "meanlab", version, about = "Matrix power means, inverse mean solvers and a monotonicity lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a matrix mean of A and B.
    Mean {
        #[arg(long, value_enum)]
        kind: MeanKind,
        /// Exponent for `ka` and `naive`.
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        #[arg(short = 'A')]
        a: String,
        #[arg(short = 'B')]
        b: String,
    },
    /// Find A, B whose two prescribed means equal X and Y.
    Inverse {
        #[arg(long, value_enum)]
        problem: InverseProblem,
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        q: Option<f64>,
        #[arg(short = 'X')]
        x: String,
        #[arg(short = 'Y')]
        y: String,
    },
    /// Split X ≤ Y into a ratio-bounded chain and solve every link.
    Chain {
        /// Power-mean exponent: `q > 1`, or `0 < q < 1` for the mirrored chain.
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long, value_enum, default_value = "arith-power")]
        problem: ChainProblem,
        #[arg(short = 'X')]
        x: String,
        #[arg(short = 'Y')]
        y: String,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// Exponent of `t^r` for the prop31 suite; defaults to `min(2, q)`.
        #[arg(long)]
        r: Option<f64>,
        /// Function tested by the characterization suite.
        #[arg(long, default_value = "sqrt")]
        function: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a violation of operator monotonicity.
    Falsify {
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numerically attempt the two-naive-means inverse problem.
    Explore {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(short = 'X')]
        x: String,
        #[arg(short = 'Y')]
        y: String,
        #[arg(long, default_value_t = 50)]
        iters: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeanKind {
    Ka,
    Naive,
    Geom,
    Arith,
    Min,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InverseProblem {
    GeomPower,
    ArithPower,
    SqrtArith,
    ArithQuadratic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChainProblem {
    ArithPower,
    SqrtArith,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Means,
    Characterization,
    Prop31,
}

/// Result of one invocation: exit code, the report for stdout (absent on
/// input errors and help), and text for stderr.
#[derive(Debug)]
pub struct CommandOutcome {
    pub code: i32,
    pub report: Option<RunReport>,
    pub message: Option<String>,
}

impl CommandOutcome {
    fn input_error(message: String) -> Self {
        Self { code: EXIT_INPUT, report: None, message: Some(message) }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return CommandOutcome { code, report: None, message: Some(e.render().to_string()) };
        }
    };
    let start = Instant::now();
    let (name, result) = match cli.command {
        Command::Mean { kind, p, a, b } => ("mean", mean(kind, p, &a, &b)),
        Command::Inverse { problem, p, q, x, y } => ("inverse", inverse(problem, p, q, &x, &y)),
        Command::Chain { q, gamma0, problem, x, y } => ("chain", chain(problem, q, gamma0, &x, &y)),
        Command::Verify { suite, p, q, r, function, dim, samples, seed } => {
            ("verify", verify(suite, p, q, r, &function, dim, samples, seed))
        }
        Command::Falsify { function, dim, samples, seed } => ("falsify", falsify(&function, dim, samples, seed)),
        Command::Explore { p, q, x, y, iters } => ("explore", explore(p, q, &x, &y, iters)),
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(run) => CommandOutcome {
            code: run.code,
            report: Some(RunReport::new(name, &run.inputs, run.outputs, elapsed_ms)),
            message: None,
        },
        Err(Failure::Input(e)) => CommandOutcome::input_error(e.to_string()),
        Err(Failure::Rejected { inputs, error }) => {
            let outputs = json!({ "error": { "kind": error.kind(), "message": error.to_string() } });
            CommandOutcome {
                code: EXIT_VIOLATED,
                report: Some(RunReport::new(name, &inputs, outputs, elapsed_ms)),
                message: Some(error.to_string()),
            }
        }
    }
}

struct Run {
    code: i32,
    inputs: Value,
    outputs: Value,
}

enum Failure {
    Input(CliError),
    /// The inputs were well formed but the mathematics refused them.
    Rejected {
        inputs: Value,
        error: Error,
    },
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Self::Input(e)
    }
}

/// Input errors stop the run; anything else becomes a rejection report.
fn reject(inputs: &Value) -> impl Fn(Error) -> Failure + '_ {
    move |error| {
        if error.is_input_error() {
            Failure::Input(CliError::Validation(error.to_string()))
        } else {
            Failure::Rejected { inputs: inputs.clone(), error }
        }
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Input(CliError::Usage(msg.into()))
}

fn function_arg(text: &str) -> Result<ScalarFunction, Failure> {
    text.parse().map_err(|e: Error| usage(e.to_string()))
}

fn mean(kind: MeanKind, p: Option<f64>, a: &str, b: &str) -> Result<Run, Failure> {
    let (a, b) = (parse_matrix_file(a)?, parse_matrix_file(b)?);
    let exponent = || p.ok_or_else(|| usage("--p is required for this kind"));
    let spec = match kind {
        MeanKind::Ka => MeanSpec::KuboAndoPower(exponent()?),
        MeanKind::Naive => MeanSpec::NaivePower(exponent()?),
        MeanKind::Geom => MeanSpec::Geometric,
        MeanKind::Arith => MeanSpec::Arithmetic,
        MeanKind::Min => MeanSpec::MinMean,
    };
    let inputs = json!({ "kind": value_name(&kind), "p": p, "A": a, "B": b });
    let result = matrix_mean(spec, &a, &b).map_err(reject(&inputs))?;
    Ok(Run { code: EXIT_OK, outputs: json!({ "mean": spec.to_string(), "result": result }), inputs })
}

fn solution_json(s: &InverseSolution) -> Value {
    json!({
        "A": s.a,
        "B": s.b,
        "residual_x": s.residual_x,
        "residual_y": s.residual_y,
        "condition": s.condition,
        "warning": s.warning,
    })
}

fn inverse(problem: InverseProblem, p: Option<f64>, q: Option<f64>, x: &str, y: &str) -> Result<Run, Failure> {
    let (x, y) = (parse_matrix_file(x)?, parse_matrix_file(y)?);
    let inputs = json!({
        "problem": value_name(&problem),
        "p": p,
        "q": q,
        "X": x,
        "Y": y,
    });
    let exponent = |name: &str| p.or(q).ok_or_else(|| usage(format!("--p or --q is required for {name}")));
    let solved = match problem {
        InverseProblem::GeomPower => solve_geom_power(exponent("geom-power")?, &x, &y),
        InverseProblem::ArithPower => solve_arith_power_local(exponent("arith-power")?, &x, &y),
        InverseProblem::SqrtArith => solve_sqrt_arith(&x, &y),
        InverseProblem::ArithQuadratic => solve_arith_quadratic(&x, &y),
    }
    .map_err(reject(&inputs))?;
    Ok(Run { code: EXIT_OK, outputs: solution_json(&solved), inputs })
}

fn chain_json(w: &ChainWitness) -> Value {
    let links: Vec<Value> = w
        .links
        .iter()
        .map(|l| json!({ "ratio_ok": l.ratio_ok, "solution": l.solution.as_ref().map(solution_json) }))
        .collect();
    json!({
        "gamma0": w.gamma0,
        "length": w.len(),
        "levels": w.levels,
        "majorant_exponent": w.majorant_exponent,
        "elements": w.zs,
        "links": links,
        "all_ratios_ok": w.all_ratios_ok(),
        "all_links_solved": w.all_links_solved(),
        "max_residual": w.max_residual(),
    })
}

fn chain(problem: ChainProblem, q: Option<f64>, gamma0: Option<f64>, x: &str, y: &str) -> Result<Run, Failure> {
    let (x, y) = (parse_matrix_file(x)?, parse_matrix_file(y)?);
    let inputs = json!({ "problem": value_name(&problem), "q": q, "gamma0": gamma0, "X": x, "Y": y });
    let witness = match problem {
        ChainProblem::SqrtArith => {
            if gamma0.is_some() {
                return Err(usage("--gamma0 is fixed for the sqrt-arith chain"));
            }
            chain_solve_sqrt(&x, &y)
        }
        ChainProblem::ArithPower => match q {
            Some(q) if q > 1.0 => chain_solve_global(q, &x, &y, gamma0),
            Some(q) if q > 0.0 && q < 1.0 => chain_solve_global_below(q, &x, &y, gamma0),
            Some(q) => return Err(usage(format!("--q must be positive and different from 1, got {q}"))),
            None => return Err(usage("--q is required for the arith-power chain")),
        },
    }
    .map_err(reject(&inputs))?;
    let ok = witness.all_ratios_ok() && witness.all_links_solved();
    Ok(Run { code: if ok { EXIT_OK } else { EXIT_VIOLATED }, outputs: chain_json(&witness), inputs })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    p: f64,
    q: f64,
    r: Option<f64>,
    function: &str,
    dim: usize,
    samples: u64,
    seed: u64,
) -> Result<Run, Failure> {
    let mut inputs = json!({ "suite": value_name(&suite), "dim": dim, "samples": samples, "seed": seed });
    let input_err = |e: Error| usage(e.to_string());
    let (code, outputs) = match suite {
        Suite::Means => {
            inputs["p"] = json!(p);
            inputs["q"] = json!(q);
            let verdict = check_mean_inequalities(p, q, dim, samples, seed).map_err(input_err)?;
            (if verdict.holds() { EXIT_OK } else { EXIT_VIOLATED }, json!({ "verdict": verdict }))
        }
        Suite::Characterization => {
            inputs["p"] = json!(p);
            inputs["q"] = json!(q);
            inputs["function"] = json!(function);
            let f = function_arg(function)?;
            let candidates = [
                Hypothesis::GeomVsPower(p),
                Hypothesis::PowerVsArith(p),
                Hypothesis::ArithVsPower(q),
                Hypothesis::NaivePowerVsArith(p),
                Hypothesis::ArithVsNaivePower(q),
                Hypothesis::ReverseAGM,
            ];
            let mut reports = Vec::new();
            for hyp in candidates.into_iter().filter(|h| h.validate().is_ok()) {
                reports.push(test_characterization(&f, hyp, dim, samples, seed).map_err(input_err)?);
            }
            if reports.is_empty() {
                return Err(usage(format!("no hypothesis accepts p={p}, q={q}")));
            }
            let consistent = reports.iter().all(|r| r.consistent);
            (if consistent { EXIT_OK } else { EXIT_VIOLATED }, json!({ "consistent": consistent, "reports": reports }))
        }
        Suite::Prop31 => {
            let r = r.unwrap_or(q.min(2.0));
            inputs["q"] = json!(q);
            inputs["r"] = json!(r);
            let report = prop31_counterexample(q, r, dim, samples, seed).map_err(input_err)?;
            (if report.demonstrated { EXIT_OK } else { EXIT_VIOLATED }, json!(report))
        }
    };
    Ok(Run { code, inputs, outputs })
}

fn falsify(function: &str, dim: usize, samples: u64, seed: u64) -> Result<Run, Failure> {
    let f = function_arg(function)?;
    let inputs = json!({ "function": f.to_string(), "dim": dim, "samples": samples, "seed": seed });
    let verdict = test_monotonicity(&f, dim, samples, seed).map_err(|e| {
        if e.is_input_error() {
            usage(e.to_string())
        } else {
            Failure::Rejected { inputs: inputs.clone(), error: e }
        }
    })?;
    let code = if verdict.is_violated() { EXIT_VIOLATED } else { EXIT_OK };
    Ok(Run { code, outputs: json!({ "verdict": verdict }), inputs })
}

fn explore(p: f64, q: f64, x: &str, y: &str, iters: usize) -> Result<Run, Failure> {
    let (x, y): (SymMatrix, SymMatrix) = (parse_matrix_file(x)?, parse_matrix_file(y)?);
    let inputs = json!({ "p": p, "q": q, "iters": iters, "X": x, "Y": y });
    let out = explore_open_problem(p, q, &x, &y, iters).map_err(reject(&inputs))?;
    let solved = out.status == ExploreStatus::Solved;
    let outputs = json!({
        "status": if solved { "solved" } else { "not-solved" },
        "A": out.a,
        "B": out.b,
        "residual_x": out.residual_x,
        "residual_y": out.residual_y,
        "iterations": out.iterations,
    });
    Ok(Run { code: if solved { EXIT_OK } else { EXIT_VIOLATED }, inputs, outputs })
}
