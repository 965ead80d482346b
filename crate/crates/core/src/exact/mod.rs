//! Closed-form product statistics `E[prod g(lambda_i)]` as determinants of
//! moment matrices, characteristic-polynomial moments, and the spanning of
//! symmetric statistics by product statistics.

mod andreief;
mod cue;
mod gue;
mod moments;
mod polynomial;
mod spanning;
mod transinv;

pub use andreief::{
    decomposition_identity_residual, ginibre_moment_matrix, ginibre_product_stat, ginibre_product_stat_log,
    power_ginibre_product_stat, power_ginibre_product_stat_log, radial_product_stat,
};
pub use cue::{charpoly_laurent, cue_charpoly_moment, cue_product_stat, CharpolyMoment, Laurent};
pub use gue::{
    gue_block_product_stat, gue_det_moment, gue_det_odd_moment, gue_det_power_moment, gue_normalization_log,
    gue_product_stat, RealPolynomial,
};
pub use moments::MomentTable;
pub use polynomial::MixedPolynomial;
pub use spanning::{eval_monomial_symmetric, evaluate_terms, spanning_coefficients, SpanningTerm};
pub use transinv::{shifted_determinant, translation_invariance_check, ShiftTable};

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("moment Gamma_V({alpha}) is infinite for potential {potential}")]
    InfiniteMoment { potential: String, alpha: f64 },
    #[error("polynomial must be even or odd")]
    MixedParity,
    #[error("invalid index: {0}")]
    Index(String),
    #[error("spanning system too large: {0} evaluation nodes")]
    SpanningTooLarge(usize),
    #[error("spanning reconstruction residual {0:e} exceeds tolerance")]
    SpanningResidual(f64),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
}
