//! Random generation: base variates, matrix models, direct samplers for
//! the decomposed laws, a projection DPP sampler and Metropolis chains.

mod direct;
mod dpp;
pub mod eigen;
mod mcmc;
mod models;
mod potential;
mod rng;

pub use direct::{
    sample_bhny_charpoly, sample_gamma_products, sample_gue_det, sample_high_powers, sample_kostlan_radii,
    GueDetCalibration,
};
pub use dpp::{sample_power_ginibre_block, DppOptions};
pub use mcmc::{
    batch_means, run_metropolis, sample_beta_ensemble_mcmc, sample_real_block_mcmc, LogGasTarget, McmcOptions,
    McmcRun,
};
pub use models::{
    sample_cue, sample_ginibre, sample_ginibre_guarded, sample_ginibre_power, sample_ginibre_product, sample_gue,
    sample_spherical, sample_truncated_unitary, DEFAULT_MAX_DIMENSION,
};
pub use potential::{quadrature_log_gamma_v, RadialPotential};
pub use rng::{splitmix64, RngStream};

use num_complex::Complex64;
use rand::RngCore;
use rand_distr::{Beta, ChiSquared, Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SamplerError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension {n} exceeds the guard {limit}")]
    DimensionGuard { n: usize, limit: usize },
    #[error("eigensolver did not converge at index {index} after {iterations} iterations")]
    EigenNoConvergence { index: usize, iterations: usize },
    #[error("singular matrix")]
    Singular,
    #[error("matrix stayed near-singular after {0} regenerations")]
    NearSingular(usize),
    #[error("angular density {value} exceeds rejection envelope {envelope}")]
    EnvelopeViolation { value: f64, envelope: f64 },
    #[error("rejection loop exceeded {0} proposals")]
    RejectionCap(usize),
    #[error("acceptance rate {0} outside [0.05, 0.9] after tuning")]
    AcceptanceRate(f64),
    #[error("moment of order {alpha} is infinite for potential {potential}")]
    InfiniteMoment { potential: String, alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scaling {
    Scaled,
    Unscaled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub ensemble: String,
    pub n: usize,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub scaling: Scaling,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSample {
    pub points: Vec<Complex64>,
    pub meta: SampleMeta,
}

impl PointSample {
    pub fn new(points: Vec<Complex64>, ensemble: &str, n: usize, scaling: Scaling, seed: u64) -> Self {
        PointSample { points, meta: SampleMeta { ensemble: ensemble.into(), n, m: None, k: None, scaling, seed } }
    }

    pub fn with_block(mut self, m: usize, k: Option<usize>) -> Self {
        self.meta.m = Some(m);
        self.meta.k = k;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.points.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn squared_moduli(&self) -> Vec<f64> {
        self.points.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `prod g(z_i)`.
    pub fn product_stat(&self, g: impl Fn(Complex64) -> Complex64) -> Complex64 {
        self.points.iter().map(|&z| g(z)).product()
    }

    /// Points raised to the power `m`.
    pub fn powers(&self, m: u32) -> Vec<Complex64> {
        self.points.iter().map(|z| z.powu(m)).collect()
    }
}

/// `N_C(0, 1)`: real and imaginary parts independent `N(0, 1/2)`.
pub fn standard_complex_normal(rng: &mut (impl RngCore + ?Sized)) -> Complex64 {
    let a: f64 = StandardNormal.sample(rng);
    let b: f64 = StandardNormal.sample(rng);
    Complex64::new(a, b) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn standard_normal(rng: &mut (impl RngCore + ?Sized)) -> f64 {
    StandardNormal.sample(rng)
}

pub fn uniform01(rng: &mut (impl RngCore + ?Sized)) -> f64 {
    // 53 random bits in (0, 1)
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

pub fn uniform_phase(rng: &mut (impl RngCore + ?Sized)) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * uniform01(rng))
}

/// `Gamma(shape, 1)`.
pub fn gamma(shape: f64, rng: &mut (impl RngCore + ?Sized)) -> f64 {
    Gamma::new(shape, 1.0).expect("positive gamma shape").sample(rng)
}

pub fn beta(a: f64, b: f64, rng: &mut (impl RngCore + ?Sized)) -> f64 {
    Beta::new(a, b).expect("positive beta parameters").sample(rng)
}

pub fn chi_squared(dof: f64, rng: &mut (impl RngCore + ?Sized)) -> f64 {
    ChiSquared::new(dof).expect("positive degrees of freedom").sample(rng)
}
