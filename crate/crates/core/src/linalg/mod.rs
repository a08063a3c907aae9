//! Dense real symmetric linear algebra: eigendecomposition, functional
//! calculus, Loewner-order tests, congruences and seeded sampling.

mod eigen;
mod function;
mod matrix;
mod order;
mod random;

pub use eigen::{eig_sym, psd_tolerance, EigenDecomp, GROUP_REL_TOL};
pub use function::{apply_fun, apply_to_decomp, require_spd, spd_sqrt_pair, Domain, MonotoneCubic, ScalarFunction};
pub use matrix::{Matrix, SymMatrix};
pub use order::{congruence_transform, is_loewner_leq, loewner_leq, LoewnerCheck};
pub use random::{gaussian_matrix, random_orthogonal, random_spd, random_spd_from, random_spd_log_uniform, sample_rng};

pub(crate) use function::clamped_sqrt;
