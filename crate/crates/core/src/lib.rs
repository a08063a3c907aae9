//! Matrix power means, constructive inverse mean problems and a seeded lab
//! for checking operator-monotonicity characterizations numerically.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: symmetric eigendecomposition (cyclic Jacobi), functional
//!   calculus, Loewner order, congruences, random SPD sampling.
//! - [`means`]: scalar power means, the Kubo-Ando power mean `P_μ(p, A, B)`,
//!   geometric / arithmetic / min means, the naive power mean
//!   `((A^p + B^p)/2)^{1/p}` and the trace divergence between the last two.
//! - [`scalar`]: branch inversion of the scalar maps `h` and `φ` and the
//!   geometric bridging chain.
//! - [`inverse`]: given `X ≤ Y`, build SPD `A, B` with two prescribed means
//!   equal to `X` and `Y`, including spectral chains that remove the ratio
//!   restriction of the local solvers.
//! - [`lab`]: randomized, reproducible verification and falsification.
//! - [`cli`]: JSON matrix files, run reports and subcommand dispatch used by
//!   the `meanlab` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod inverse;
pub mod lab;
pub mod linalg;
pub mod means;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{ScalarFunction, SymMatrix};
pub use means::MeanSpec;
