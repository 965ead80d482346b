use super::ExactError;
use crate::numerics::{log_det, log_gamma, ComplexMatrix, LogComplex, ProgressionIndex};
use num_complex::Complex64;
use std::f64::consts::LN_2;

/// Real polynomial, coefficient of `x^n` at index `n`.
pub type RealPolynomial = Vec<f64>;

/// `ln int x^alpha e^(-x^2/2) dx` for even `alpha`.
fn log_gauss_moment(alpha: u32) -> f64 {
    let h = (alpha as f64 + 1.0) / 2.0;
    h * LN_2 + log_gamma(h)
}

fn block_sizes(n: usize) -> (usize, usize) {
    let c1 = ProgressionIndex { n, m: 2, k: 1 }.cardinality();
    let c2 = ProgressionIndex { n, m: 2, k: 2 }.cardinality();
    (c1, c2)
}

/// `(ln D^(N,1), ln D^(N,2))`, the two striped minors of the `g = 1` moment
/// matrix for the weight `e^(-x^2/2)`.
pub fn gue_normalization_log(n: usize) -> (f64, f64) {
    let (c1, c2) = block_sizes(n);
    let (f1, f2) = (c1 as f64, c2 as f64);
    let mut d1 = (f1 * f1 - f1 / 2.0) * LN_2;
    for k in 1..=c1 {
        d1 += log_gamma(k as f64) + log_gamma(k as f64 - 0.5);
    }
    let mut d2 = (f2 * f2 + f2 / 2.0) * LN_2;
    for k in 1..=c2 {
        d2 += log_gamma(k as f64) + log_gamma(k as f64 + 0.5);
    }
    (d1, d2)
}

fn parity(g: &[f64]) -> Result<Option<usize>, ExactError> {
    let mut p = None;
    for (i, &c) in g.iter().enumerate() {
        if c != 0.0 {
            match p {
                None => p = Some(i % 2),
                Some(q) if q != i % 2 => return Err(ExactError::MixedParity),
                _ => {}
            }
        }
    }
    Ok(p)
}

/// Log-determinant of `f_ij = int x^(i+j-2) g(x) e^(-x^2/2) dx` over `idx`.
fn log_det_moments(idx: &[usize], g: &[f64]) -> Result<LogComplex, ExactError> {
    let scale: Vec<f64> = idx.iter().map(|&i| 0.5 * log_gauss_moment(2 * (i as u32 - 1))).collect();
    let a = ComplexMatrix::from_fn(idx.len(), idx.len(), |r, c| {
        let base = (idx[r] + idx[c] - 2) as u32;
        let v: f64 = g
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0.0)
            .map(|(p, &x)| {
                let alpha = base + p as u32;
                if alpha % 2 == 1 {
                    0.0
                } else {
                    x * (log_gauss_moment(alpha) - scale[r] - scale[c]).exp()
                }
            })
            .sum();
        Complex64::new(v, 0.0)
    });
    let s: f64 = scale.iter().map(|x| 2.0 * x).sum();
    Ok(log_det(&a)? * LogComplex::new(s, 0.0))
}

/// `E[prod g(x_i)]` for GUE(N) with weight `e^(-x^2/2)`; `g` even or odd.
pub fn gue_product_stat(n: usize, g: &[f64]) -> Result<f64, ExactError> {
    parity(g)?;
    if n == 0 {
        return Ok(1.0);
    }
    let idx: Vec<usize> = (1..=n).collect();
    let (d1, d2) = gue_normalization_log(n);
    Ok((log_det_moments(&idx, g)? / LogComplex::new(d1 + d2, 0.0)).to_real())
}

/// `E[prod_(i in I_k) h(y_i)]` for the block `k in {1,2}` of the squared
/// GUE spectrum, `h` a polynomial in `y = x^2`.
pub fn gue_block_product_stat(n: usize, k: usize, h: &[f64]) -> Result<f64, ExactError> {
    let block = ProgressionIndex::new(n, 2, k)?;
    let idx = block.indices();
    if idx.is_empty() {
        return Ok(1.0);
    }
    let mut g = vec![0.0; 2 * h.len()];
    for (q, &c) in h.iter().enumerate() {
        g[2 * q] = c;
    }
    let (d1, d2) = gue_normalization_log(n);
    let d = if k == 1 { d1 } else { d2 };
    Ok((log_det_moments(&idx, &g)? / LogComplex::new(d, 0.0)).to_real())
}

/// `E[Pi^(2m)]`, `Pi = prod x_i`, for GUE(N) with weight `e^(-x^2/2)`.
pub fn gue_det_moment(n: usize, m: u32) -> f64 {
    let (c1, c2) = block_sizes(n);
    let mf = m as f64;
    let mut s = mf * n as f64 * LN_2;
    for l in 1..=c1 {
        s += log_gamma(l as f64 + mf - 0.5) - log_gamma(l as f64 - 0.5);
    }
    for l in 1..=c2 {
        s += log_gamma(l as f64 + mf + 0.5) - log_gamma(l as f64 + 0.5);
    }
    s.exp()
}

/// `E[Pi^(2m+1)]`. Zero for odd N by the symmetry `x -> -x`; for even
/// `N = 2c` the moment matrix is anti-striped and the value is
/// `(-1)^c 2^((2m+1)c) prod_(i<=c) Gamma(i+m+1/2)^2 / (Gamma(i-1/2) Gamma(i+1/2))`.
pub fn gue_det_odd_moment(n: usize, m: u32) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let c = n / 2;
    let mf = m as f64;
    let mut s = (2.0 * mf + 1.0) * c as f64 * LN_2;
    for i in 1..=c {
        let i = i as f64;
        s += 2.0 * log_gamma(i + mf + 0.5) - log_gamma(i - 0.5) - log_gamma(i + 0.5);
    }
    let sign = if c.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * s.exp()
}

/// `E[Pi^power]`.
pub fn gue_det_power_moment(n: usize, power: u32) -> f64 {
    if power.is_multiple_of(2) {
        gue_det_moment(n, power / 2)
    } else {
        gue_det_odd_moment(n, power / 2)
    }
}
