//! Exact statistics, samplers and kernels for power maps of radially
//! symmetric determinantal point processes (Ginibre, CUE, GUE and
//! even-β ensembles), plus a verification harness.

pub mod exact;
pub mod harness;
pub mod kernels;
pub mod latent;
pub mod numerics;
pub mod samplers;

pub use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] numerics::NumericsError),
    #[error(transparent)]
    Exact(#[from] exact::ExactError),
    #[error(transparent)]
    Sampler(#[from] samplers::SamplerError),
    #[error(transparent)]
    Kernel(#[from] kernels::KernelError),
    #[error(transparent)]
    Latent(#[from] latent::LatentError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
