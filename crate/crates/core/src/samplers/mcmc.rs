use super::{standard_complex_normal, standard_normal, uniform01, RadialPotential, RngStream, SamplerError};
use num_complex::Complex64;
use std::sync::Arc;

/// Density `prod_{i<j} |z_i - z_j|^beta prod exp(one_body(z_i))`, on the
/// plane or on the real line.
#[derive(Clone)]
pub struct LogGasTarget {
    pub beta: f64,
    pub one_body: Arc<dyn Fn(Complex64) -> f64 + Send + Sync>,
    pub real_line: bool,
    pub init: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug)]
pub struct McmcOptions {
    pub steps: usize,
    /// Defaults to `steps / 2`.
    pub burn_in: Option<usize>,
    /// Defaults to the number of points.
    pub thin: Option<usize>,
    pub target_acceptance: f64,
}

impl McmcOptions {
    pub fn new(steps: usize) -> Self {
        McmcOptions { steps, burn_in: None, thin: None, target_acceptance: 0.3 }
    }
}

#[derive(Clone, Debug)]
pub struct McmcRun {
    /// Thinned states after burn-in.
    pub samples: Vec<Vec<Complex64>>,
    pub acceptance_rate: f64,
    pub step_size: f64,
}

impl McmcRun {
    pub fn last(&self) -> Option<&[Complex64]> {
        self.samples.last().map(|v| v.as_slice())
    }

    /// Mean of `stat` over the thinned states with a batch-means standard
    /// error.
    pub fn estimate(&self, stat: impl Fn(&[Complex64]) -> f64, batches: usize) -> (f64, f64) {
        let v: Vec<f64> = self.samples.iter().map(|s| stat(s)).collect();
        batch_means(&v, batches)
    }

    /// `|mean(first half) - mean(second half)| / se` for `stat`, with batch
    /// means on each half.
    pub fn split_chain_z(&self, stat: impl Fn(&[Complex64]) -> f64) -> f64 {
        let v: Vec<f64> = self.samples.iter().map(|s| stat(s)).collect();
        let h = v.len() / 2;
        let (m1, s1) = batch_means(&v[..h], 10);
        let (m2, s2) = batch_means(&v[h..], 10);
        (m1 - m2).abs() / (s1 * s1 + s2 * s2).sqrt()
    }
}

/// Mean and batch-means standard error with `batches` equal batches
/// (trailing remainder dropped from the error estimate).
pub fn batch_means(v: &[f64], batches: usize) -> (f64, f64) {
    let n = v.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    let b = batches.max(2);
    let len = n / b;
    if len == 0 {
        return (mean, f64::NAN);
    }
    let means: Vec<f64> = (0..b).map(|i| v[i * len..(i + 1) * len].iter().sum::<f64>() / len as f64).collect();
    let mm = means.iter().sum::<f64>() / b as f64;
    let var = means.iter().map(|x| (x - mm).powi(2)).sum::<f64>() / (b - 1) as f64;
    (mean, (var / b as f64).sqrt())
}

fn site_delta(t: &LogGasTarget, z: &[Complex64], i: usize, new: Complex64) -> f64 {
    let ob = (t.one_body)(new);
    if ob == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut d = ob - (t.one_body)(z[i]);
    let mut pair = 0.0;
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            pair += ((new - zj).norm_sqr() / (z[i] - zj).norm_sqr()).ln();
        }
    }
    d += 0.5 * t.beta * pair;
    d
}

/// Single-site random-walk Metropolis. Sites are visited cyclically; the
/// step size is tuned during burn-in towards the target acceptance rate.
pub fn run_metropolis(target: &LogGasTarget, opts: &McmcOptions, rng: &mut RngStream) -> Result<McmcRun, SamplerError> {
    let n = target.init.len();
    if n == 0 {
        return Err(SamplerError::InvalidParameter("empty initial state".into()));
    }
    let burn = opts.burn_in.unwrap_or(opts.steps / 2);
    let thin = opts.thin.unwrap_or(n).max(1);
    if opts.steps < burn {
        return Err(SamplerError::InvalidParameter("steps shorter than burn-in".into()));
    }
    let mut z = target.init.clone();
    let scale = z.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let mut step = 0.5 * scale / (n as f64).sqrt();
    let window = 200;
    let mut acc_window = 0usize;
    let mut acc_post = 0usize;
    let mut samples = Vec::with_capacity((opts.steps - burn) / thin + 1);
    for t in 0..opts.steps {
        let i = t % n;
        let noise = if target.real_line {
            Complex64::new(standard_normal(rng), 0.0)
        } else {
            standard_complex_normal(rng) * std::f64::consts::SQRT_2
        };
        let cand = z[i] + noise * step;
        let d = site_delta(target, &z, i, cand);
        let accept = d >= 0.0 || uniform01(rng).ln() < d;
        if accept {
            z[i] = cand;
        }
        if t < burn {
            acc_window += accept as usize;
            if (t + 1) % window == 0 {
                let rate = acc_window as f64 / window as f64;
                step *= (rate / opts.target_acceptance).clamp(0.5, 2.0);
                acc_window = 0;
            }
        } else {
            acc_post += accept as usize;
            if (t - burn + 1).is_multiple_of(thin) {
                samples.push(z.clone());
            }
        }
    }
    let post = opts.steps - burn;
    let rate = if post == 0 { f64::NAN } else { acc_post as f64 / post as f64 };
    if post > 0 && !(0.05..=0.9).contains(&rate) {
        return Err(SamplerError::AcceptanceRate(rate));
    }
    Ok(McmcRun { samples, acceptance_rate: rate, step_size: step })
}

fn spread_init(n: usize, radius: impl Fn(usize) -> f64) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n).map(|i| Complex64::from_polar(radius(i), golden * i as f64)).collect()
}

/// The even-beta ensemble `prod |z_i - z_j|^(2p) prod e^(-V(|z_i|^2))`.
pub fn sample_beta_ensemble_mcmc(
    n: usize,
    p: u32,
    v: &RadialPotential,
    steps: usize,
    rng: &mut RngStream,
) -> Result<McmcRun, SamplerError> {
    if p < 1 || n == 0 {
        return Err(SamplerError::InvalidParameter("need p >= 1 and N >= 1".into()));
    }
    let end = v.support_end();
    let init = if end.is_finite() {
        spread_init(n, |i| (end * (i as f64 + 0.5) / (n as f64 + 1.0)).sqrt())
    } else {
        spread_init(n, |i| ((i + 1) as f64 * p as f64).sqrt())
    };
    let pot = v.clone();
    let target = LogGasTarget {
        beta: 2.0 * p as f64,
        one_body: Arc::new(move |z: Complex64| -pot.v(z.norm_sqr())),
        real_line: false,
        init,
    };
    run_metropolis(&target, &McmcOptions::new(steps), rng)
}

/// `count` points on `(0, inf)` with density
/// `prod |y_i - y_j|^2 prod y_i^(k - 3/2) e^(-y_i/2)`, `k in {1, 2}`: a
/// block of the squared GUE spectrum.
pub fn sample_real_block_mcmc(count: usize, k: usize, steps: usize, rng: &mut RngStream) -> Result<McmcRun, SamplerError> {
    if count == 0 || !(k == 1 || k == 2) {
        return Err(SamplerError::InvalidParameter("need count >= 1 and k in {1, 2}".into()));
    }
    let a = k as f64 - 1.5;
    let init = (0..count).map(|i| Complex64::new(2.0 * (2 * i + k) as f64 + 0.5, 0.0)).collect();
    let target = LogGasTarget {
        beta: 2.0,
        one_body: Arc::new(move |z: Complex64| if z.re <= 0.0 { f64::NEG_INFINITY } else { a * z.re.ln() - 0.5 * z.re }),
        real_line: true,
        init,
    };
    run_metropolis(&target, &McmcOptions::new(steps), rng)
}
