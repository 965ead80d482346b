//! Vandermonde power expansions and the latent exponent vector `I` of
//! even-beta radially symmetric ensembles: given `I = u`, the squared radii
//! are independent `Gamma_V(1 + u_i)` variables.

mod gammav;
mod table;

pub use gammav::{GammaVSampler, GRID_NODES};
pub use table::{
    expand_vandermonde_power, expand_vandermonde_power_guarded, log_abs_bigint, LatentWeightTable, DEFAULT_GUARD,
};

use crate::numerics::quadrature::{integrate, integrate_to_infinity};
use crate::numerics::{log_factorial, log_sum_exp, NumericsError};
use crate::samplers::{
    sample_beta_ensemble_mcmc, uniform01, uniform_phase, PointSample, RadialPotential, RngStream, SamplerError, Scaling,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum LatentError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expansion guard exceeded at N={n}, p={p}")]
    Guard { n: usize, p: u32 },
    #[error("Gamma_V({alpha}) is infinite for potential {potential}")]
    InfiniteMoment { potential: String, alpha: f64 },
    #[error("high powers need M >= (N-1)p+1 = {min}, got {m}")]
    PowerTooSmall { m: usize, min: usize },
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("table parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

/// Law of `I`: `P(I = u) ∝ K(u)^2 prod Gamma_V(1 + u_i)`.
#[derive(Clone, Debug)]
pub struct LatentDistribution {
    pub n: usize,
    pub p: u32,
    pub potential: RadialPotential,
    pub support: Vec<Vec<u32>>,
    pub probabilities: Vec<f64>,
    /// `ln Z_{2p,N}`.
    pub log_z: f64,
    cumulative: Vec<f64>,
}

pub fn latent_distribution(table: &LatentWeightTable, v: &RadialPotential) -> Result<LatentDistribution, LatentError> {
    let mut lg: HashMap<u32, f64> = HashMap::new();
    let mut logs = Vec::with_capacity(table.len());
    let mut support = Vec::with_capacity(table.len());
    for (u, k) in &table.entries {
        let mut l = 2.0 * log_abs_bigint(k);
        for &ui in u {
            let alpha = 1.0 + ui as f64;
            let g = *lg.entry(ui).or_insert_with(|| v.log_gamma_v(alpha));
            if !g.is_finite() || !v.moment_is_finite(alpha) {
                return Err(LatentError::InfiniteMoment { potential: v.name().to_string(), alpha });
            }
            l += g;
        }
        logs.push(l);
        support.push(u.clone());
    }
    let log_z = log_sum_exp(&logs);
    let probabilities: Vec<f64> = logs.iter().map(|l| (l - log_z).exp()).collect();
    let mut cumulative = Vec::with_capacity(probabilities.len());
    let mut acc = 0.0;
    for p in &probabilities {
        acc += p;
        cumulative.push(acc);
    }
    Ok(LatentDistribution { n: table.n, p: table.p, potential: v.clone(), support, probabilities, log_z, cumulative })
}

/// Exact weights `K(u)^2 prod u_i!` and their sum `Z_{2p,N}` for `V(t) = t`.
pub fn exact_quadratic_weights(table: &LatentWeightTable) -> (Vec<(Vec<u32>, BigInt)>, BigInt) {
    let fact = |n: u32| -> BigInt { (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i)) };
    let mut z = BigInt::zero();
    let mut out = Vec::with_capacity(table.len());
    for (u, k) in &table.entries {
        let mut w = k * k;
        for &ui in u {
            w *= fact(ui);
        }
        z += &w;
        out.push((u.clone(), w));
    }
    (out, z)
}

impl LatentDistribution {
    pub fn sample_index(&self, rng: &mut RngStream) -> &[u32] {
        let total = *self.cumulative.last().unwrap_or(&1.0);
        let x = uniform01(rng) * total;
        let i = self.cumulative.partition_point(|&c| c <= x).min(self.support.len() - 1);
        &self.support[i]
    }

    pub fn total_probability(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    fn samplers(&self) -> Result<HashMap<u32, GammaVSampler>, LatentError> {
        let mut out = HashMap::new();
        for u in &self.support {
            for &ui in u {
                if let std::collections::hash_map::Entry::Vacant(e) = out.entry(ui) {
                    e.insert(GammaVSampler::new(&self.potential, 1.0 + ui as f64)?);
                }
            }
        }
        Ok(out)
    }

    /// Draws `I`, then independent `Gamma_V(1 + I_i)`; one multiset of
    /// squared radii per call to the returned closure.
    pub fn radii_sampler(&self) -> Result<ConditionalRadii<'_>, LatentError> {
        Ok(ConditionalRadii { dist: self, samplers: self.samplers()? })
    }

    /// `E[prod g(X_i)]` as the mixture `sum_u P(u) prod E[g(Gamma_V(1+u_i))]`,
    /// each factor by 1-D quadrature of `g` against the density.
    pub fn exact_product_stat(&self, g: &dyn Fn(f64) -> f64) -> Result<f64, LatentError> {
        let mut cache: HashMap<u32, f64> = HashMap::new();
        let mut total = 0.0;
        for (u, p) in self.support.iter().zip(&self.probabilities) {
            let mut prod = *p;
            for &ui in u {
                let e = match cache.get(&ui) {
                    Some(x) => *x,
                    None => {
                        let x = self.factor_expectation(g, 1.0 + ui as f64)?;
                        cache.insert(ui, x);
                        x
                    }
                };
                prod *= e;
            }
            total += prod;
        }
        Ok(total)
    }

    fn factor_expectation(&self, g: &dyn Fn(f64) -> f64, alpha: f64) -> Result<f64, LatentError> {
        let v = &self.potential;
        let f = |t: f64| {
            let ld = v.log_density(alpha, t);
            if ld == f64::NEG_INFINITY {
                0.0
            } else {
                g(t) * ld.exp()
            }
        };
        let end = v.support_end();
        let r = if end.is_finite() { integrate(f, 0.0, end, 1e-13, 1e-11) } else { integrate_to_infinity(f, 0.0, 1e-13, 1e-11) };
        r.map_err(|e| LatentError::Quadrature(e.to_string()))
    }
}

pub struct ConditionalRadii<'a> {
    dist: &'a LatentDistribution,
    samplers: HashMap<u32, GammaVSampler>,
}

impl ConditionalRadii<'_> {
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        let u = self.dist.sample_index(rng).to_vec();
        u.iter().map(|ui| self.samplers[ui].sample(rng)).collect()
    }
}

/// One multiset of squared radii from the conditional construction.
pub fn sample_conditional_radii(dist: &LatentDistribution, rng: &mut RngStream) -> Result<Vec<f64>, LatentError> {
    Ok(dist.radii_sampler()?.sample(rng))
}

/// `{X_i^(M/2) e^(i theta_i)}` given `I`, valid as the law of the `M`-th
/// powers when `M >= (N-1)p + 1`.
pub fn sample_conditional_high_powers(dist: &LatentDistribution, m: usize, rng: &mut RngStream) -> Result<PointSample, LatentError> {
    let min = (dist.n - 1) * dist.p as usize + 1;
    if m < min {
        return Err(LatentError::PowerTooSmall { m, min });
    }
    let seed = rng.seed();
    let radii = sample_conditional_radii(dist, rng)?;
    let pts: Vec<Complex64> = radii.iter().map(|x| uniform_phase(rng) * x.powf(m as f64 / 2.0)).collect();
    Ok(PointSample::new(pts, "latent-high-powers", dist.n, Scaling::Unscaled, seed).with_block(m, None))
}

/// An estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiiVerification {
    pub n: usize,
    pub p: u32,
    pub exact: f64,
    pub conditional: Estimate,
    pub mcmc: Estimate,
    pub mcmc_acceptance: f64,
    /// `|exact - conditional| / se`.
    pub z_conditional: f64,
    /// `|exact - mcmc| / se`.
    pub z_mcmc: f64,
    pub pass: bool,
}

/// `E[prod g(|z_i|^2)]` three ways: exact mixture, conditional sampler
/// (`samples` draws) and Metropolis (`mcmc_steps` steps, batch means over
/// 20 batches). Passes when the first two agree within 3 s.e. and the
/// first and third within 4 s.e.
pub fn verify_conditional_radii_against_mcmc(
    n: usize,
    p: u32,
    v: &RadialPotential,
    g: &dyn Fn(f64) -> f64,
    samples: usize,
    mcmc_steps: usize,
    rng: &mut RngStream,
) -> Result<RadiiVerification, LatentError> {
    let table = expand_vandermonde_power(n, p)?;
    let dist = latent_distribution(&table, v)?;
    let exact = dist.exact_product_stat(g)?;

    let sampler = dist.radii_sampler()?;
    let mut r1 = rng.split(1);
    let vals: Vec<f64> = (0..samples).map(|_| sampler.sample(&mut r1).iter().map(|&x| g(x)).product()).collect();
    let mean = vals.iter().sum::<f64>() / samples as f64;
    let var = vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0);
    let conditional = Estimate { mean, se: (var / samples as f64).sqrt() };

    let mut r2 = rng.split(2);
    let run = sample_beta_ensemble_mcmc(n, p, v, mcmc_steps, &mut r2)?;
    let (m_mean, m_se) = run.estimate(|s| s.iter().map(|z| g(z.norm_sqr())).product(), 20);
    let mcmc = Estimate { mean: m_mean, se: m_se };

    let z_conditional = if conditional.se > 0.0 { (exact - mean).abs() / conditional.se } else { 0.0 };
    let z_mcmc = if m_se > 0.0 { (exact - m_mean).abs() / m_se } else { 0.0 };
    Ok(RadiiVerification {
        n,
        p,
        exact,
        conditional,
        mcmc,
        mcmc_acceptance: run.acceptance_rate,
        z_conditional,
        z_mcmc,
        pass: z_conditional < 3.0 && z_mcmc < 4.0,
    })
}

/// `ln(2^p p!)`, the normalization for `N = 2`, `V(t) = t`.
pub fn log_z_two_points(p: u32) -> f64 {
    p as f64 * std::f64::consts::LN_2 + log_factorial(p as u64)
}
