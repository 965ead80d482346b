use super::{ExactError, MixedPolynomial};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// One product statistic `weight * prod_i factor(Z_i, conj Z_i)`.
#[derive(Debug, Clone)]
pub struct SpanningTerm {
    pub weight: Complex64,
    pub factor: MixedPolynomial,
}

const MAX_NODES: usize = 1 << 16;
const CHECK_POINTS: usize = 20;
const CHECK_TOL: f64 = 1e-8;

fn padded(target: &[(u32, u32)], n: usize) -> Result<Vec<(u32, u32)>, ExactError> {
    if target.len() > n {
        return Err(ExactError::InvalidTarget(format!("{} exponent pairs for N = {n}", target.len())));
    }
    let mut t = target.to_vec();
    t.resize(n, (0, 0));
    Ok(t)
}

/// The monomial symmetric mixed polynomial: the sum of
/// `prod_i Z_i^(a_sigma(i)) conj(Z_i)^(b_sigma(i))` over the distinct
/// rearrangements of the target pairs (missing pairs are `(0,0)`).
pub fn eval_monomial_symmetric(target: &[(u32, u32)], z: &[Complex64]) -> Result<Complex64, ExactError> {
    let t = padded(target, z.len())?;
    let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for p in t {
        *counts.entry(p).or_default() += 1;
    }
    let pairs: Vec<(u32, u32)> = counts.keys().copied().collect();
    let mut left: Vec<usize> = counts.values().copied().collect();
    fn rec(i: usize, z: &[Complex64], pairs: &[(u32, u32)], left: &mut [usize]) -> Complex64 {
        if i == z.len() {
            return Complex64::new(1.0, 0.0);
        }
        let mut s = Complex64::new(0.0, 0.0);
        for p in 0..pairs.len() {
            if left[p] == 0 {
                continue;
            }
            left[p] -= 1;
            let (a, b) = pairs[p];
            s += z[i].powu(a) * z[i].conj().powu(b) * rec(i + 1, z, pairs, left);
            left[p] += 1;
        }
        s
    }
    Ok(rec(0, z, &pairs, &mut left))
}

/// Writes a monomial symmetric mixed polynomial in `N` variables as a
/// linear combination of product statistics.
///
/// With distinct target pairs `p_1..p_K` and multiplicities `alpha`,
/// `prod_i sum_j w_j Z_i^(c_j) conj(Z_i)^(d_j) = sum_alpha w^alpha m_alpha`.
/// Taking `w_1 = 1`, `w_j = t^((N+1)^(j-2))` turns `w^alpha` into distinct
/// powers `t^(e_alpha)` with `e_alpha < D = (N+1)^(K-1)`; evaluating at the
/// D-th roots of unity makes the extraction an exact discrete Fourier
/// inversion.
pub fn spanning_coefficients(target: &[(u32, u32)], n: usize) -> Result<Vec<SpanningTerm>, ExactError> {
    if n == 0 {
        return Err(ExactError::InvalidTarget("N must be positive".into()));
    }
    let t = padded(target, n)?;
    let mut counts: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for p in &t {
        *counts.entry(*p).or_default() += 1;
    }
    let pairs: Vec<(u32, u32)> = counts.keys().copied().collect();
    let mult: Vec<usize> = counts.values().copied().collect();
    let kk = pairs.len();
    let base = n + 1;
    let mut d: usize = 1;
    for _ in 1..kk {
        d = d.checked_mul(base).filter(|&x| x <= MAX_NODES).ok_or(ExactError::SpanningTooLarge(usize::MAX))?;
    }
    let digit: Vec<usize> = (0..kk).map(|j| if j == 0 { 0 } else { base.pow(j as u32 - 1) }).collect();
    let e_star: usize = (1..kk).map(|j| mult[j] * digit[j]).sum();
    let mut out = Vec::with_capacity(d);
    for l in 0..d {
        let angle = |e: usize| 2.0 * PI * ((l * e) % d) as f64 / d as f64;
        let factor = MixedPolynomial::from_terms(
            pairs.iter().enumerate().map(|(j, &p)| (p, Complex64::from_polar(1.0, angle(digit[j])))),
        );
        let weight = Complex64::from_polar(1.0 / d as f64, -angle(e_star));
        out.push(SpanningTerm { weight, factor });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0f5a);
    let mut worst: f64 = 0.0;
    for _ in 0..CHECK_POINTS {
        let z: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(rng.random_range(0.2..1.0), rng.random_range(0.0..2.0 * PI)))
            .collect();
        let direct = eval_monomial_symmetric(&t, &z)?;
        let spanned = evaluate_terms(&out, &z);
        let scale = direct.norm().max(1e-300);
        worst = worst.max((direct - spanned).norm() / scale);
    }
    if worst > CHECK_TOL {
        return Err(ExactError::SpanningResidual(worst));
    }
    Ok(out)
}

/// `sum_l weight_l prod_i factor_l(z_i)`.
pub fn evaluate_terms(terms: &[SpanningTerm], z: &[Complex64]) -> Complex64 {
    terms.iter().map(|t| t.weight * z.iter().map(|&zi| t.factor.eval(zi)).product::<Complex64>()).sum()
}
