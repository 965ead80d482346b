use super::{log_gamma, LogComplex, NumericsError};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Number of terms in a partial exponential sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terms {
    Finite(usize),
    Infinite,
}

const SERIES_CUTOFF: f64 = 1e-18;
const MAX_SERIES_TERMS: usize = 100_000;

fn check(m: usize, k: usize, x: Complex64) -> Result<(), NumericsError> {
    if m == 0 {
        return Err(NumericsError::ZeroModulus);
    }
    if k == 0 || k > m {
        return Err(NumericsError::ResidueOutOfRange { m, k });
    }
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(NumericsError::NonFinite("x"));
    }
    Ok(())
}

/// `sum_{j<n} x^(Mj+k-1) / (Mj+k-1)!`, or the full series `e_{M,k}(x)`.
///
/// The full series is summed directly for `|x| <= 1`. Larger arguments are
/// halved until `|x| <= 1` and rebuilt with the addition rule
/// `E_r(a+b) = sum_{s+t = r mod M} E_s(a) E_t(b)`, which avoids the
/// cancellation of the raw series in the left half-plane.
pub fn partial_exp_sum(m: usize, k: usize, x: Complex64, terms: Terms) -> Result<Complex64, NumericsError> {
    check(m, k, x)?;
    match terms {
        Terms::Finite(n) => Ok(finite_sum(m, k, x, n)),
        Terms::Infinite => {
            if x.norm() >= 700.0 {
                return Err(NumericsError::Domain(x.norm()));
            }
            Ok(all_residues(m, x)?[k - 1])
        }
    }
}

fn finite_sum(m: usize, k: usize, x: Complex64, n: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    if n == 0 {
        return sum;
    }
    // x^(k-1)/(k-1)!
    let mut term = Complex64::new(1.0, 0.0);
    for i in 1..k {
        term *= x / i as f64;
    }
    let mut deg = k - 1;
    for j in 0..n {
        sum += term;
        if j + 1 == n {
            break;
        }
        for _ in 0..m {
            deg += 1;
            term *= x / deg as f64;
        }
    }
    sum
}

fn series(m: usize, k: usize, x: Complex64) -> Result<Complex64, NumericsError> {
    let mut term = Complex64::new(1.0, 0.0);
    for i in 1..k {
        term *= x / i as f64;
    }
    let mut deg = k - 1;
    let mut sum = term;
    let mut small = 0;
    for _ in 0..MAX_SERIES_TERMS {
        for _ in 0..m {
            deg += 1;
            term *= x / deg as f64;
        }
        sum += term;
        if term.norm() < SERIES_CUTOFF * sum.norm() || term.norm() == 0.0 {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(NumericsError::NoConvergence(MAX_SERIES_TERMS))
}

/// `[e_{M,1}(x), ..., e_{M,M}(x)]`.
fn all_residues(m: usize, x: Complex64) -> Result<Vec<Complex64>, NumericsError> {
    let mut halvings = 0;
    let mut y = x;
    while y.norm() > 1.0 {
        y /= 2.0;
        halvings += 1;
    }
    let mut v = (1..=m).map(|k| series(m, k, y)).collect::<Result<Vec<_>, _>>()?;
    for _ in 0..halvings {
        let mut w = vec![Complex64::new(0.0, 0.0); m];
        for s in 0..m {
            for t in 0..m {
                w[(s + t) % m] += v[s] * v[t];
            }
        }
        v = w;
    }
    Ok(v)
}

fn primitive_root(m: usize, j: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)
}

/// `(1/M) sum_l conj(zeta)^((k-1)(l-1)) exp(zeta^(l-1) x)` with `zeta = e^(2 pi i/M)`.
pub fn roots_of_unity_filter(m: usize, k: usize, x: Complex64) -> Result<Complex64, NumericsError> {
    roots_of_unity_filter_with_root(m, k, x, 1)
}

/// Same filter using the primitive root `zeta = e^(2 pi i j/M)`; `j` must be
/// coprime to `M`.
pub fn roots_of_unity_filter_with_root(m: usize, k: usize, x: Complex64, j: usize) -> Result<Complex64, NumericsError> {
    check(m, k, x)?;
    let zeta = primitive_root(m, j);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zl = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        sum += zl.conj().powu((k - 1) as u32) * (zl * x).exp();
        zl *= zeta;
    }
    Ok(sum / m as f64)
}

/// Log-domain version of `roots_of_unity_filter`, safe for large `|x|`.
pub fn log_roots_of_unity_filter(m: usize, k: usize, x: Complex64) -> Result<LogComplex, NumericsError> {
    check(m, k, x)?;
    let zeta = primitive_root(m, 1);
    let roots: Vec<Complex64> = (0..m).map(|l| zeta.powu(l as u32)).collect();
    let r = roots.iter().map(|z| (z * x).re).fold(f64::NEG_INFINITY, f64::max);
    let mut sum = Complex64::new(0.0, 0.0);
    for z in &roots {
        sum += z.conj().powu((k - 1) as u32) * (z * x - r).exp();
    }
    let s = LogComplex::from_complex(sum / m as f64);
    Ok(s * LogComplex::new(r, 0.0))
}

/// `ln sum_{j<n} x^(Mj+k-1)/(Mj+k-1)!` for real `x >= 0`.
pub fn log_partial_exp_sum_real(m: usize, k: usize, x: f64, n: usize) -> Result<f64, NumericsError> {
    check(m, k, Complex64::new(x, 0.0))?;
    if x < 0.0 {
        return Err(NumericsError::Domain(x));
    }
    if n == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    if x == 0.0 {
        return Ok(if k == 1 { 0.0 } else { f64::NEG_INFINITY });
    }
    let lx = x.ln();
    let logs: Vec<f64> = (0..n)
        .map(|j| {
            let d = (m * j + k - 1) as f64;
            d * lx - log_gamma(d + 1.0)
        })
        .collect();
    Ok(super::log_sum_exp(&logs))
}
