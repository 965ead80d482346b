//! Shared numerical substrate.

mod expsum;
mod index;
mod logcomplex;
mod matrix;
pub mod quadrature;
mod special;

pub use expsum::{
    log_partial_exp_sum_real, log_roots_of_unity_filter, partial_exp_sum, roots_of_unity_filter,
    roots_of_unity_filter_with_root, Terms,
};
pub use index::ProgressionIndex;
pub use logcomplex::LogComplex;
pub use matrix::{log_det, striped_det, ComplexMatrix};
pub use special::{
    gamma_p, gamma_q, log_beta, log_binomial, log_factorial, log_gamma, log_sum_exp, normal_cdf,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("residue k={k} out of range for modulus M={m}")]
    ResidueOutOfRange { m: usize, k: usize },
    #[error("modulus M must be at least 1")]
    ZeroModulus,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not {m}-striped: entry ({i},{j}) is non-zero")]
    NotStriped { m: usize, i: usize, j: usize },
    #[error("argument {0} outside the supported domain")]
    Domain(f64),
    #[error("series did not converge after {0} terms")]
    NoConvergence(usize),
    #[error("quadrature failed to reach tolerance {tol:e} (estimate {err:e})")]
    Quadrature { tol: f64, err: f64 },
}
