use super::ExactError;
use crate::numerics::{log_factorial, log_gamma};
use crate::samplers::RadialPotential;

/// Moments `m(a,b) = int z^a conj(z)^b d mu` of the reference measures.
///
/// Every table except `GueUnscaled` is rotation invariant, so `m(a,b)`
/// vanishes unless `a == b`; `GueUnscaled` stores the real moments
/// `int x^n e^(-x^2/2) dx / sqrt(2 pi)`.
#[derive(Debug, Clone)]
pub enum MomentTable {
    /// `pi^-1 e^(-|z|^2) dm`: `m(a,a) = a!`.
    GinibreUnscaled,
    /// Normalized `e^(-V(|z|^2))`: `m(a,a) = Gamma_V(a+1)/Gamma_V(1)`.
    RadialPotential(RadialPotential),
    /// Uniform measure on the unit circle.
    Cue,
    GueUnscaled,
    /// Power-Ginibre reference measure at `N = 1`: `m(a,a) = Gamma(Ma+k)/Gamma(k)`.
    PowerGinibre { m: u32, k: u32 },
}

impl MomentTable {
    /// `ln m(a,a)` for the rotation-invariant tables.
    pub fn log_diagonal(&self, a: u32) -> Result<f64, ExactError> {
        match self {
            MomentTable::GinibreUnscaled => Ok(log_factorial(a as u64)),
            MomentTable::Cue => Ok(0.0),
            MomentTable::PowerGinibre { m, k } => Ok(log_gamma((m * a + k) as f64) - log_gamma(*k as f64)),
            MomentTable::RadialPotential(v) => {
                let hi = v.log_gamma_v(a as f64 + 1.0);
                if !hi.is_finite() {
                    return Err(ExactError::InfiniteMoment { potential: v.name().to_string(), alpha: a as f64 + 1.0 });
                }
                Ok(hi - v.log_gamma_v(1.0))
            }
            MomentTable::GueUnscaled => Err(ExactError::Index("GUE moments are real, use real_moment".into())),
        }
    }

    /// `m(a,b)`; for `GueUnscaled` this is `m(a+b)` on the real line.
    pub fn moment(&self, a: u32, b: u32) -> Result<f64, ExactError> {
        match self {
            MomentTable::GueUnscaled => Ok(self.real_moment(a + b)),
            _ if a != b => Ok(0.0),
            _ => Ok(self.log_diagonal(a)?.exp()),
        }
    }

    /// Normalized Gaussian moment: `(n-1)!!` for even `n`, 0 for odd.
    pub fn real_moment(&self, n: u32) -> f64 {
        if n % 2 == 1 {
            return 0.0;
        }
        let h = (n / 2) as u64;
        (log_factorial(2 * h) - h as f64 * std::f64::consts::LN_2 - log_factorial(h)).exp()
    }
}
