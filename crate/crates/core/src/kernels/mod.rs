//! Ginibre and Power-Ginibre kernels, reference measures, the twisted
//! circular law and microscopic limits.

mod series;

pub use series::log_block_series;

use crate::numerics::quadrature::integrate_to_infinity;
use crate::numerics::{log_gamma, log_partial_exp_sum_real, LogComplex, NumericsError, ProgressionIndex};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum KernelError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("pair outside the off-antipodal region: |pi - arg(z conj w)| = {0} <= epsilon")]
    OutsideOmega(f64),
    #[error("invalid argument: {0}")]
    Domain(String),
}

/// Default `epsilon` for the region `|pi - arg(z conj w)| > epsilon`.
pub const OMEGA_EPSILON: f64 = 0.3;

/// The kernel of `Gin(N, M, k)` with respect to `nu_{N,M,k}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerGinKernel {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub c_k: usize,
    /// `ln(pi N^-k M Gamma(k))`.
    pub log_z_nu: f64,
}

impl PowerGinKernel {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self, KernelError> {
        let idx = ProgressionIndex::new(n, m, k)?;
        let log_z_nu = PI.ln() - k as f64 * (n as f64).ln() + (m as f64).ln() + log_gamma(k as f64);
        Ok(PowerGinKernel { n, m, k, c_k: idx.cardinality(), log_z_nu })
    }

    /// `ln K(z, w)`, `K = Gamma(k) sum_{l<c_k} (N^M z conj w)^l / (Ml+k-1)!`.
    pub fn log_kernel(&self, z: Complex64, w: Complex64) -> LogComplex {
        let x = LogComplex::from_complex(z * w.conj()) * LogComplex::new(self.m as f64 * (self.n as f64).ln(), 0.0);
        let (s, _) = log_block_series(self.m, self.k, self.c_k, x);
        s * LogComplex::new(log_gamma(self.k as f64), 0.0)
    }

    pub fn kernel_eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.log_kernel(z, w).to_complex()
    }

    /// `ln` of the density of `nu_{N,M,k}` with respect to Lebesgue measure.
    pub fn log_reference_density(&self, z: Complex64) -> f64 {
        let r2 = z.norm_sqr();
        if r2 == 0.0 {
            return match self.k.cmp(&self.m) {
                std::cmp::Ordering::Less => f64::INFINITY,
                std::cmp::Ordering::Equal => -self.log_z_nu,
                std::cmp::Ordering::Greater => f64::NEG_INFINITY,
            };
        }
        let (m, k) = (self.m as f64, self.k as f64);
        (k - m) / m * r2.ln() - self.n as f64 * r2.powf(1.0 / m) - self.log_z_nu
    }

    pub fn reference_density(&self, z: Complex64) -> f64 {
        self.log_reference_density(z).exp()
    }

    /// `ln((1/c_k) K(z, z) nu'(z))`, the normalized one-point density.
    pub fn log_mean_density(&self, z: Complex64) -> Result<f64, KernelError> {
        let (m, k) = (self.m as f64, self.k as f64);
        let r2 = z.norm_sqr();
        let log_s = if r2 == 0.0 {
            -log_gamma(k)
        } else {
            // sum_l y^(Ml)/(Ml+k-1)! = y^(1-k) e^(c)_{M,k}(y), y = N |z|^(2/M)
            let y = self.n as f64 * r2.powf(1.0 / m);
            (1.0 - k) * y.ln() + log_partial_exp_sum_real(self.m, self.k, y, self.c_k)?
        };
        Ok(log_gamma(k) + log_s + self.log_reference_density(z) - (self.c_k as f64).ln())
    }

    pub fn mean_density(&self, z: Complex64) -> Result<f64, KernelError> {
        Ok(self.log_mean_density(z)?.exp())
    }

    /// `ln J(z, w)`, `J = |K(z,w)|^2 nu'(z) nu'(w)`.
    pub fn log_j_quantity(&self, z: Complex64, w: Complex64) -> f64 {
        2.0 * self.log_kernel(z, w).log_modulus + self.log_reference_density(z) + self.log_reference_density(w)
    }

    pub fn j_quantity(&self, z: Complex64, w: Complex64) -> f64 {
        self.log_j_quantity(z, w).exp()
    }

    /// `ln` of `N^2/(pi^2 M^4) |z w|^(2/M-2) exp(-N |z^(1/M) - w^(1/M)|^2)`
    /// with the closest pair of roots.
    pub fn log_j_asymptotic(&self, z: Complex64, w: Complex64) -> f64 {
        let m = self.m as f64;
        let (a, b) = closest_roots(self.m, z, w);
        2.0 * (self.n as f64).ln() - 2.0 * PI.ln() - 4.0 * m.ln() + (2.0 / m - 2.0) * (z.norm() * w.norm()).ln()
            - self.n as f64 * (a - b).norm_sqr()
    }

    /// `|J - asymptotic| / J` on the region `|pi - arg(z conj w)| > epsilon`.
    pub fn asymptotic_residual(&self, z: Complex64, w: Complex64, epsilon: f64) -> Result<f64, KernelError> {
        let gap = (PI - (z * w.conj()).arg().abs()).abs();
        if gap <= epsilon {
            return Err(KernelError::OutsideOmega(gap));
        }
        let d = self.log_j_asymptotic(z, w) - self.log_j_quantity(z, w);
        Ok(d.exp_m1().abs())
    }
}

/// Principal `M`-th root of `z`, and the root of `w` closest to it (ties
/// broken toward the smaller argument).
pub fn closest_roots(m: usize, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
    let a = principal_root(m, z);
    let b0 = principal_root(m, w);
    let mut best = b0;
    let mut best_d = f64::INFINITY;
    for j in 0..m {
        let b = b0 * root_of_unity(m, j);
        let d = (a - b).norm();
        if d < best_d - 1e-15 || ((d - best_d).abs() <= 1e-15 && b.arg() < best.arg()) {
            best = b;
            best_d = d;
        }
    }
    (a, best)
}

pub fn principal_root(m: usize, z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return z;
    }
    Complex64::from_polar(z.norm().powf(1.0 / m as f64), z.arg() / m as f64)
}

fn root_of_unity(m: usize, j: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)
}

/// `(1/(pi M)) |z|^(2/M-2)` on the unit disk, zero outside.
pub fn twisted_circular_density(m: usize, z: Complex64) -> f64 {
    let r = z.norm();
    if r >= 1.0 {
        return 0.0;
    }
    let m = m as f64;
    r.powf(2.0 / m - 2.0) / (PI * m)
}

/// Choice of primitive root and of `M`-th root representatives in the
/// microscopic kernel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RootChoice {
    /// `zeta = e^(2 pi i j / M)`; `j` must be coprime to `M` (0 means 1).
    pub zeta_index: usize,
    /// `z^(1/M) = principal root * e^(2 pi i s / M)`.
    pub z_branch: usize,
    pub w_branch: usize,
}

fn chosen_roots(m: usize, z: Complex64, w: Complex64, choice: RootChoice) -> (Complex64, Complex64) {
    (principal_root(m, z) * root_of_unity(m, choice.z_branch), principal_root(m, w) * root_of_unity(m, choice.w_branch))
}

/// Limit kernel of `N^(M/2) Gin(N, M, k)` with respect to the twisted
/// measure `(1/(pi M)) |z|^(2/M-2) dm(z)`:
/// `(1/M) sum_j zeta^(j(1-k)) exp(-|zeta^j a - b|^2/2 + i Im(zeta^j a conj b))`
/// with `a = z^(1/M)`, `b = w^(1/M)`.
///
/// Changing `zeta` leaves the value unchanged; changing the root
/// representatives multiplies it by a unimodular gauge factor.
pub fn microscopic_kernel(m: usize, k: usize, z: Complex64, w: Complex64) -> Complex64 {
    microscopic_kernel_with(m, k, z, w, RootChoice::default())
}

pub fn microscopic_kernel_with(m: usize, k: usize, z: Complex64, w: Complex64, choice: RootChoice) -> Complex64 {
    let (a, b) = chosen_roots(m, z, w, choice);
    let zi = if choice.zeta_index == 0 { 1 } else { choice.zeta_index };
    let zeta = root_of_unity(m, zi);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zj = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        let u = zj * a;
        let e = -0.5 * (u - b).norm_sqr();
        let ph = (u * b.conj()).im;
        sum += zj.powi(1 - k as i32) * Complex64::from_polar(e.exp(), ph);
        zj *= zeta;
    }
    sum / m as f64
}

/// Finite-`N` counterpart of `microscopic_kernel` in the same gauge:
/// `e^(c_k)_{M,k}(x) e^(-(|z|^(2/M) + |w|^(2/M))/2)`, `x = a conj b`.
pub fn finite_microscopic_kernel(n: usize, m: usize, k: usize, z: Complex64, w: Complex64, choice: RootChoice) -> Result<Complex64, KernelError> {
    let c = ProgressionIndex::new(n, m, k)?.cardinality();
    let (a, b) = chosen_roots(m, z, w, choice);
    let x = a * b.conj();
    let lx = LogComplex::from_complex(x);
    let (s, _) = log_block_series(m, k, c, lx.powi(m as i32));
    let damp = -0.5 * (a.norm_sqr() + b.norm_sqr());
    Ok((s * lx.powi(k as i32 - 1) * LogComplex::new(damp, 0.0)).to_complex())
}

/// `int_C f dm` in polar coordinates: adaptive quadrature in the radius
/// and a trapezoid rule with `angular` nodes in the angle.
pub fn integrate_plane(
    f: impl Fn(Complex64) -> Complex64,
    angular: usize,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Complex64, KernelError> {
    let ring = |r: f64| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..angular {
            s += f(Complex64::from_polar(r, 2.0 * PI * j as f64 / angular as f64));
        }
        s * (2.0 * PI * r / angular as f64)
    };
    let re = integrate_to_infinity(|r| ring(r).re, 0.0, abs_tol, rel_tol)?;
    let im = integrate_to_infinity(|r| ring(r).im, 0.0, abs_tol, rel_tol)?;
    Ok(Complex64::new(re, im))
}
