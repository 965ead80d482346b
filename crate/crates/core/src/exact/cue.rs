use super::ExactError;
use crate::numerics::{log_binomial, log_det, log_factorial, ComplexMatrix};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Laurent polynomial `sum_j a_j X^j`.
pub type Laurent = BTreeMap<i32, Complex64>;

/// `E[prod g(e^(i theta_k))]` for CUE(N) as the Toeplitz determinant `det(a_(i-j))`.
pub fn cue_product_stat(n: usize, g: &Laurent) -> Result<Complex64, ExactError> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let zero = Complex64::new(0.0, 0.0);
    let t = ComplexMatrix::from_fn(n, n, |i, j| *g.get(&(i as i32 - j as i32)).unwrap_or(&zero));
    Ok(log_det(&t)?.to_complex())
}

/// `(1 - X)^m (1 - 1/X)^n` as a Laurent polynomial.
pub fn charpoly_laurent(m: u32, n: u32) -> Laurent {
    let mut out = Laurent::new();
    for a in 0..=m {
        for b in 0..=n {
            let c = log_binomial(m as f64, a as f64).exp().round() * log_binomial(n as f64, b as f64).exp().round();
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            *out.entry(a as i32 - b as i32).or_insert(Complex64::new(0.0, 0.0)) += Complex64::new(sign * c, 0.0);
        }
    }
    out.retain(|_, c| c.norm() != 0.0);
    out
}

/// `E[Z^m conj(Z)^n]` for `Z = det(1 - U)`, `U ~ CUE(N)`, computed two ways.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CharpolyMoment {
    /// `det C(i+m+j+n-2, i+m-1)`, `i,j = 1..N`.
    pub pascal_minor: f64,
    /// `prod_(k<N) k!(k+m+n)! / ((k+m)!(k+n)!)`.
    pub product_formula: f64,
}

impl CharpolyMoment {
    pub fn relative_difference(&self) -> f64 {
        (self.pascal_minor - self.product_formula).abs() / self.product_formula.abs().max(f64::MIN_POSITIVE)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    a[n - 1][n - 1].clone() * sign
}

pub fn cue_charpoly_moment(n: usize, m: u32, k: u32) -> Result<CharpolyMoment, ExactError> {
    let rows: Vec<Vec<BigInt>> = (1..=n as u64)
        .map(|i| (1..=n as u64).map(|j| binomial(i + m as u64 + j + k as u64 - 2, i + m as u64 - 1)).collect())
        .collect();
    let pascal = bareiss(rows).to_f64().unwrap_or(f64::INFINITY);
    let mut log_prod = 0.0;
    for j in 0..n as u64 {
        log_prod += log_factorial(j) + log_factorial(j + (m + k) as u64)
            - log_factorial(j + m as u64)
            - log_factorial(j + k as u64);
    }
    Ok(CharpolyMoment { pascal_minor: pascal, product_formula: log_prod.exp() })
}
