use super::LatentError;
use crate::numerics::quadrature::gauss_legendre;
use crate::samplers::{gamma, uniform01, RadialPotential, RngStream};

/// Number of grid nodes for the inverse CDF.
pub const GRID_NODES: usize = 4096;

/// Sampler for `Gamma_V(alpha)` (density `t^(alpha-1) e^(-V(t)) / Gamma_V(alpha)`).
/// Uses the gamma generator for `V(t) = t`; otherwise inverts a CDF
/// tabulated on `GRID_NODES` nodes of `s = t / (t + c)`, with monotone
/// cubic interpolation of `s` as a function of the CDF.
#[derive(Clone, Debug)]
pub struct GammaVSampler {
    alpha: f64,
    exact_gamma: bool,
    scale: f64,
    cdf: Vec<f64>,
    s: Vec<f64>,
    slopes: Vec<f64>,
}

impl GammaVSampler {
    pub fn new(v: &RadialPotential, alpha: f64) -> Result<Self, LatentError> {
        if !v.moment_is_finite(alpha) {
            return Err(LatentError::InfiniteMoment { potential: v.name().to_string(), alpha });
        }
        if v.is_quadratic() {
            return Ok(GammaVSampler { alpha, exact_gamma: true, scale: 1.0, cdf: vec![], s: vec![], slopes: vec![] });
        }
        Self::tabulated(v, alpha)
    }

    /// Always uses the tabulated inverse CDF, even for `V(t) = t`.
    pub fn tabulated(v: &RadialPotential, alpha: f64) -> Result<Self, LatentError> {
        if !v.moment_is_finite(alpha) {
            return Err(LatentError::InfiniteMoment { potential: v.name().to_string(), alpha });
        }
        let end = v.support_end();
        // scale: the mean when finite, else 1
        let scale = if v.moment_is_finite(alpha + 1.0) {
            (v.log_gamma_v(alpha + 1.0) - v.log_gamma_v(alpha)).exp()
        } else {
            1.0
        };
        let s_end = if end.is_finite() { end / (end + scale) } else { 1.0 };
        let lg = v.log_gamma_v(alpha);
        // density in s: f(t) dt/ds, t = c s/(1-s), dt/ds = c/(1-s)^2
        let g = |s: f64| -> f64 {
            if s <= 0.0 || s >= s_end && !end.is_finite() {
                return 0.0;
            }
            let t = scale * s / (1.0 - s);
            let lf = (alpha - 1.0) * t.ln() - v.v(t) - lg;
            if lf == f64::NEG_INFINITY || lf.is_nan() {
                return 0.0;
            }
            (lf + (scale / (1.0 - s).powi(2)).ln()).exp()
        };
        let (x, w) = gauss_legendre(8);
        let n = GRID_NODES;
        let nodes: Vec<f64> = (0..n).map(|i| s_end * i as f64 / (n - 1) as f64).collect();
        let mut cdf = vec![0.0; n];
        for i in 1..n {
            let (a, b) = (nodes[i - 1], nodes[i]);
            let h = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let mut acc = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                acc += wi * g(mid + h * xi);
            }
            cdf[i] = cdf[i - 1] + h * acc;
        }
        let total = cdf[n - 1];
        if !(total > 0.0) || (total - 1.0).abs() > 1e-6 {
            return Err(LatentError::Quadrature(format!("Gamma_V({alpha}) CDF total mass {total}")));
        }
        // keep strictly increasing CDF values
        let mut f = Vec::with_capacity(n);
        let mut s = Vec::with_capacity(n);
        for i in 0..n {
            let c = cdf[i] / total;
            if f.last().is_none_or(|&last: &f64| c > last) {
                f.push(c);
                s.push(nodes[i]);
            }
        }
        let slopes = fritsch_carlson(&f, &s);
        Ok(GammaVSampler { alpha, exact_gamma: false, scale, cdf: f, s, slopes })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Quantile from the table at probability `u`.
    pub fn quantile(&self, u: f64) -> f64 {
        let f = &self.cdf;
        let u = u.clamp(f[0], f[f.len() - 1]);
        let i = match f.binary_search_by(|x| x.total_cmp(&u)) {
            Ok(i) => return self.to_t(self.s[i]),
            Err(i) => i.clamp(1, f.len() - 1) - 1,
        };
        let h = f[i + 1] - f[i];
        let tt = (u - f[i]) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * tt) * (1.0 - tt) * (1.0 - tt),
            tt * (1.0 - tt) * (1.0 - tt),
            tt * tt * (3.0 - 2.0 * tt),
            tt * tt * (tt - 1.0),
        );
        let s = h00 * self.s[i] + h10 * h * self.slopes[i] + h01 * self.s[i + 1] + h11 * h * self.slopes[i + 1];
        self.to_t(s)
    }

    fn to_t(&self, s: f64) -> f64 {
        if s >= 1.0 {
            return f64::INFINITY;
        }
        self.scale * s / (1.0 - s)
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        if self.exact_gamma {
            gamma(self.alpha, rng)
        } else {
            self.quantile(uniform01(rng))
        }
    }
}

/// Monotone cubic Hermite slopes (Fritsch-Carlson) for increasing data.
fn fritsch_carlson(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let d: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    let mut m = vec![0.0; n];
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for i in 1..n - 1 {
        m[i] = if d[i - 1] * d[i] <= 0.0 { 0.0 } else { 0.5 * (d[i - 1] + d[i]) };
    }
    for i in 0..n - 1 {
        if d[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / d[i];
        let b = m[i + 1] / d[i];
        let r = a * a + b * b;
        if r > 9.0 {
            let t = 3.0 / r.sqrt();
            m[i] = t * a * d[i];
            m[i + 1] = t * b * d[i];
        }
    }
    m
}
