use super::{beta, chi_squared, gamma, uniform01, uniform_phase, PointSample, RngStream, SamplerError, Scaling};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `{gamma_1, ..., gamma_N}` with `gamma_k ~ Gamma(k, 1)` independent.
pub fn sample_kostlan_radii(n: usize, rng: &mut RngStream) -> Vec<f64> {
    (1..=n).map(|k| gamma(k as f64, rng)).collect()
}

/// `{gamma_k^(M/2) e^(i theta_k)}`, the law of `N^(M/2) lambda^M` when
/// `M >= N`.
pub fn sample_high_powers(n: usize, m: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    if m < n {
        return Err(SamplerError::InvalidParameter(format!("high powers need M >= N, got M={m}, N={n}")));
    }
    let seed = rng.seed();
    let pts = (1..=n)
        .map(|k| {
            let g = gamma(k as f64, rng);
            uniform_phase(rng) * g.powf(m as f64 / 2.0)
        })
        .collect();
    Ok(PointSample::new(pts, "high-powers", n, Scaling::Unscaled, seed).with_block(m, None))
}

/// `{prod_j gamma_k^(j)}_{k=1..N}` with `count` independent factors per
/// point: the squared moduli of a product of unscaled Ginibre matrices.
pub fn sample_gamma_products(n: usize, count: usize, rng: &mut RngStream) -> Vec<f64> {
    (1..=n).map(|k| (0..count).map(|_| gamma(k as f64, rng)).product()).collect()
}

/// `prod_k (1 + sqrt(b_k) e^(i w_k))` with `b_1 = 1` and
/// `b_k ~ Beta(1, k-1)` for `k >= 2`.
pub fn sample_bhny_charpoly(n: usize, rng: &mut RngStream) -> Complex64 {
    let mut z = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        let b = if k == 1 { 1.0 } else { beta(1.0, (k - 1) as f64, rng) };
        z *= Complex64::new(1.0, 0.0) + uniform_phase(rng) * b.sqrt();
    }
    z
}

/// How the chi-squared product is mapped to the GUE determinant with
/// weight `e^(-x^2/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GueDetCalibration {
    /// `(-1)^e prod chi^2(d_k)`, `d_k = 2 floor(k/2) + 1`.
    Raw,
    /// `c(N) (-1)^e prod chi^2(d_k)` with `c(N)^2 = prod 1/(d_k + 2)`,
    /// which matches the second moment only.
    Scalar,
    /// `(-1)^e prod sqrt(chi^2(d_k))`, which matches every even moment.
    SquareRoot,
}

pub fn gue_det_degrees(n: usize) -> Vec<f64> {
    (1..=n).map(|k| (2 * (k / 2) + 1) as f64).collect()
}

pub fn sample_gue_det(n: usize, calibration: GueDetCalibration, rng: &mut RngStream) -> f64 {
    let dofs = gue_det_degrees(n);
    let sign = if uniform01(rng) < 0.5 { -1.0 } else { 1.0 };
    let x: f64 = match calibration {
        GueDetCalibration::Raw => dofs.iter().map(|&d| chi_squared(d, rng)).product(),
        GueDetCalibration::Scalar => {
            let c: f64 = dofs.iter().map(|&d| (d + 2.0).sqrt().recip()).product();
            c * dofs.iter().map(|&d| chi_squared(d, rng)).product::<f64>()
        }
        GueDetCalibration::SquareRoot => dofs.iter().map(|&d| chi_squared(d, rng).sqrt()).product(),
    };
    sign * x
}
