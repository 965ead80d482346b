use crate::numerics::{log_gamma, LogComplex};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_TAIL_TERMS: usize = 1_000_000;

/// Sums terms `exp(l_i + i p_i)`; returns the log-domain sum and the log
/// of the sum of moduli.
fn sum_terms(terms: &[(f64, f64)]) -> (LogComplex, f64) {
    let top = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return (LogComplex::ZERO, f64::NEG_INFINITY);
    }
    let mut s = Complex64::new(0.0, 0.0);
    let mut a = 0.0;
    for &(l, p) in terms {
        let e = (l - top).exp();
        s += Complex64::from_polar(e, p);
        a += e;
    }
    (LogComplex::from_complex(s) * LogComplex::new(top, 0.0), top + a.ln())
}

/// `S = sum_{l<c} x^l / Gamma(Ml+k)` in log form, with the log of an
/// absolute error bound.
///
/// Two routes are evaluated and the one with the smaller bound is kept:
/// the direct sum, and `y^(1-k) (e_{M,k}(y) - tail)` with `y^M = x`, where
/// the full series comes from the roots-of-unity filter. The second wins
/// when the direct terms cancel.
pub fn log_block_series(m: usize, k: usize, c: usize, x: LogComplex) -> (LogComplex, f64) {
    if c == 0 {
        return (LogComplex::ZERO, f64::NEG_INFINITY);
    }
    if x.is_zero() {
        return (LogComplex::new(-log_gamma(k as f64), 0.0), f64::NEG_INFINITY);
    }
    let eps = f64::EPSILON;
    let (lx, px) = (x.log_modulus, x.phase);
    let direct: Vec<(f64, f64)> =
        (0..c).map(|l| (l as f64 * lx - log_gamma((m * l + k) as f64), l as f64 * px)).collect();
    let (sd, ad) = sum_terms(&direct);
    let err_d = (eps * (c as f64 + 1.0)).ln() + ad;

    // filter route: y = principal root of x
    let mf = m as f64;
    let ly = lx / mf;
    let py = px / mf;
    let y_abs = ly.exp();
    if !y_abs.is_finite() {
        return (sd, err_d);
    }
    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(m + 64);
    let y = Complex64::from_polar(y_abs, py);
    let shift_l = (1.0 - k as f64) * ly;
    let shift_p = (1.0 - k as f64) * py;
    for j in 0..m {
        let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / mf);
        let u = zeta * y;
        // (1/M) conj(zeta)^(k-1) e^u y^(1-k)
        let phase = u.im - 2.0 * PI * (j * (k - 1)) as f64 / mf + shift_p;
        terms.push((u.re - mf.ln() + shift_l, phase));
    }
    let peak_l = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    // tail l >= c, negated
    let mut l = c;
    let mut tail_max = f64::NEG_INFINITY;
    loop {
        let lt = l as f64 * lx - log_gamma((m * l + k) as f64);
        terms.push((lt, l as f64 * px + PI));
        tail_max = tail_max.max(lt);
        let deg = (m * l + k) as f64;
        // terms decrease once the degree passes |y|
        if deg > y_abs && lt < tail_max.max(peak_l) - 45.0 {
            break;
        }
        l += 1;
        if l - c > MAX_TAIL_TERMS {
            return (sd, err_d);
        }
    }
    let (sf, af) = sum_terms(&terms);
    let err_f = (eps * (terms.len() as f64 + 8.0 * y_abs.max(1.0))).ln() + af;
    if err_f < err_d {
        (sf, err_f)
    } else {
        (sd, err_d)
    }
}

