use super::{gamma, uniform01, PointSample, RngStream, SamplerError, Scaling};
use crate::numerics::{log_gamma, ProgressionIndex};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct DppOptions {
    /// Largest block size `c_k` accepted.
    pub max_block: usize,
    pub angular_grid: usize,
    pub envelope_safety: f64,
    pub rejection_cap: usize,
}

impl Default for DppOptions {
    fn default() -> Self {
        DppOptions { max_block: 64, angular_grid: 1024, envelope_safety: 1.2, rejection_cap: 1_000_000 }
    }
}

/// Sequential sampler for the projection DPP `Gin(N, M, k)`, returned in
/// the scaled frame (the block of `Gin(N)^M` on the indices `i = k mod M`).
///
/// Works in the unscaled coordinate `x = N^(M/2) z`, where the basis is
/// `x^l / sqrt(h_l)`, `h_l = Gamma(Ml+k)/Gamma(k)`, and `s = |x|^(2/M)`
/// of the `l`-th function is `Gamma(Ml+k)`. With `Q` the projector onto
/// the complement of the chosen feature vectors, the next modulus is a
/// mixture of those laws with weights `Q_ll`, and the angle given the
/// modulus has density `u^* Q u`, `u_l = a_l e^(i l theta)`.
pub fn sample_power_ginibre_block(
    n: usize,
    m: usize,
    k: usize,
    opts: &DppOptions,
    rng: &mut RngStream,
) -> Result<PointSample, SamplerError> {
    let idx = ProgressionIndex::new(n, m, k).map_err(|e| SamplerError::InvalidParameter(e.to_string()))?;
    let c = idx.cardinality();
    if c > opts.max_block {
        return Err(SamplerError::DimensionGuard { n: c, limit: opts.max_block });
    }
    let seed = rng.seed();
    let grid = opts.angular_grid.max(2 * c);
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(grid);
    let log_h: Vec<f64> = (0..c).map(|l| log_gamma((m * l + k) as f64) - log_gamma(k as f64)).collect();

    let mut q = vec![Complex64::new(0.0, 0.0); c * c];
    for l in 0..c {
        q[l * c + l] = Complex64::new(1.0, 0.0);
    }
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(c);
    let mut points = Vec::with_capacity(c);
    let mut a = vec![0.0; c];
    let mut buf = vec![Complex64::new(0.0, 0.0); grid];

    for _ in 0..c {
        // radial index with probability Q_ll / trace
        let weights: Vec<f64> = (0..c).map(|l| q[l * c + l].re.max(0.0)).collect();
        let total: f64 = weights.iter().sum();
        let mut target = uniform01(rng) * total;
        let mut lsel = c - 1;
        for (l, w) in weights.iter().enumerate() {
            if target < *w {
                lsel = l;
                break;
            }
            target -= w;
        }
        let s = gamma((m * lsel + k) as f64, rng);
        let r = s.powf(m as f64 / 2.0);
        let ln_r = r.ln();
        let la: Vec<f64> = (0..c).map(|l| l as f64 * ln_r - 0.5 * log_h[l]).collect();
        let lmax = la.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for l in 0..c {
            a[l] = (la[l] - lmax).exp();
        }
        // f(theta) = b_0 + 2 Re sum_{d>=1} b_d e^(i d theta)
        let mut b = vec![Complex64::new(0.0, 0.0); c];
        for d in 0..c {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..c - d {
                acc += q[l * c + l + d] * (a[l] * a[l + d]);
            }
            b[d] = acc;
        }
        for x in buf.iter_mut() {
            *x = Complex64::new(0.0, 0.0);
        }
        buf[0] = b[0] * 0.5;
        buf[1..c].copy_from_slice(&b[1..c]);
        fft.process(&mut buf);
        let grid_max = buf.iter().map(|x| 2.0 * x.re).fold(f64::NEG_INFINITY, f64::max);
        let envelope = grid_max * opts.envelope_safety;
        if !(envelope > 0.0) || !envelope.is_finite() {
            return Err(SamplerError::EnvelopeViolation { value: grid_max, envelope });
        }
        let density = |theta: f64| {
            let mut f = b[0].re;
            for (d, bd) in b.iter().enumerate().skip(1) {
                f += 2.0 * (bd * Complex64::from_polar(1.0, d as f64 * theta)).re;
            }
            f
        };
        let mut tries = 0usize;
        let theta = loop {
            tries += 1;
            if tries > opts.rejection_cap {
                return Err(SamplerError::RejectionCap(opts.rejection_cap));
            }
            let theta = 2.0 * PI * uniform01(rng);
            let f = density(theta);
            if f > envelope {
                return Err(SamplerError::EnvelopeViolation { value: f, envelope });
            }
            if uniform01(rng) * envelope < f {
                break theta;
            }
        };
        points.push(Complex64::from_polar(r, theta));

        // new direction: Q u normalized, Gram-Schmidt twice for stability
        let mut e: Vec<Complex64> = (0..c).map(|l| Complex64::from_polar(a[l], l as f64 * theta)).collect();
        for _ in 0..2 {
            for v in &basis {
                let proj: Complex64 = v.iter().zip(&e).map(|(x, y)| x.conj() * y).sum();
                for (el, vl) in e.iter_mut().zip(v) {
                    *el -= proj * vl;
                }
            }
        }
        let norm = e.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(SamplerError::InvalidParameter("degenerate feature vector".into()));
        }
        for x in e.iter_mut() {
            *x /= norm;
        }
        for i in 0..c {
            for j in 0..c {
                q[i * c + j] -= e[i] * e[j].conj();
            }
        }
        basis.push(e);
    }
    let scale = (n as f64).powf(-(m as f64) / 2.0);
    let pts = points.into_iter().map(|x| x * scale).collect();
    Ok(PointSample::new(pts, "power-ginibre-block", n, Scaling::Scaled, seed).with_block(m, Some(k)))
}
