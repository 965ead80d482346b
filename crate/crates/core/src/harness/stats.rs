use super::HarnessError;

/// Smallest sample size for which the asymptotic Kolmogorov law is used.
pub const KS_MIN_SAMPLES: usize = 50;

/// `P(K > x)` for the Kolmogorov distribution,
/// `2 sum_(j>=1) (-1)^(j-1) e^(-2 j^2 x^2)`.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 0.3 {
        // the alternating series converges slowly here; the value is 1 to
        // double precision
        return 1.0;
    }
    let mut s = 0.0;
    for j in 1..=100 {
        let j = j as f64;
        let t = (-2.0 * j * j * x * x).exp();
        s += if j as u64 % 2 == 1 { t } else { -t };
        if t < 1e-17 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// Critical value `x` with `P(K > x) = alpha`, by bisection.
pub fn kolmogorov_critical(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.3, 5.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if kolmogorov_survival(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    /// Critical value for the statistic at the requested level.
    pub critical: f64,
    pub p_value: f64,
    pub effective_n: f64,
}

impl KsResult {
    pub fn pass(&self) -> bool {
        self.statistic <= self.critical
    }
}

fn check_len(n: usize) -> Result<(), HarnessError> {
    if n < KS_MIN_SAMPLES {
        return Err(HarnessError::Statistics(format!("KS test needs at least {KS_MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

/// One-sample KS test of `xs` against `cdf`.
pub fn ks_one_sample(xs: &[f64], cdf: impl Fn(f64) -> f64, alpha: f64) -> Result<KsResult, HarnessError> {
    check_len(xs.len())?;
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult { statistic: d, critical: kolmogorov_critical(alpha) / n.sqrt(), p_value: kolmogorov_survival(d * n.sqrt()), effective_n: n })
}

/// Two-sample KS test.
pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> Result<KsResult, HarnessError> {
    check_len(a.len())?;
    check_len(b.len())?;
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n1, n2) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] <= t {
            i += 1;
        }
        while j < y.len() && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    let ne = n1 * n2 / (n1 + n2);
    Ok(KsResult { statistic: d, critical: kolmogorov_critical(alpha) / ne.sqrt(), p_value: kolmogorov_survival(d * ne.sqrt()), effective_n: ne })
}

/// Mean and standard error of the mean.
pub fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (m, f64::NAN);
    }
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

/// Sample mean, unbiased variance, skewness and excess kurtosis.
pub fn moments(v: &[f64]) -> (f64, f64, f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let m2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m3 = v.iter().map(|x| (x - m).powi(3)).sum::<f64>() / n;
    let m4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    (m, m2 * n / (n - 1.0), m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
}

/// Standard error of the sample variance, `sqrt((mu4 - s^4 (n-3)/(n-1)) / n)`.
pub fn variance_se(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let s2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    let mu4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    ((mu4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt()
}

/// Two-sided normal quantile `z` with `P(|Z| > z) = alpha`.
pub fn normal_two_sided(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 40.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 2.0 * (1.0 - crate::numerics::normal_cdf(mid)) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
