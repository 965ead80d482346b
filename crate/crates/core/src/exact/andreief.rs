use super::{ExactError, MixedPolynomial, MomentTable};
use crate::numerics::{log_det, ComplexMatrix, LogComplex, ProgressionIndex};
use crate::samplers::RadialPotential;
use num_complex::Complex64;
use std::collections::HashMap;

/// Symmetrized Andreief matrix over the 1-based index set `idx`:
/// entry `(i,j) = sum_(a,b) c_(a,b) m(i-1+Ma, j-1+Mb) / sqrt(m(i-1,i-1) m(j-1,j-1))`
/// for a rotation-invariant table. Its determinant equals the determinant of
/// `f_ij = m-integral / m(j-1,j-1)` over the same index set.
fn symmetric_matrix(idx: &[usize], g: &MixedPolynomial, mpow: u32, table: &MomentTable) -> Result<ComplexMatrix, ExactError> {
    let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut w = HashMap::new();
    let mut logw = |n: u32| -> Result<f64, ExactError> {
        if let Some(x) = w.get(&n) {
            return Ok(*x);
        }
        let x = table.log_diagonal(n)?;
        w.insert(n, x);
        Ok(x)
    };
    let mut out = ComplexMatrix::zeros(idx.len(), idx.len());
    for (r, &i) in idx.iter().enumerate() {
        for (a, b, c) in g.terms() {
            let row_exp = (i - 1) as i64 + (mpow * a) as i64;
            let j = row_exp - (mpow * b) as i64 + 1;
            if j < 1 {
                continue;
            }
            let Some(&col) = pos.get(&(j as usize)) else { continue };
            let lw = logw(row_exp as u32)? - 0.5 * (logw(i as u32 - 1)? + logw(j as u32 - 1)?);
            out[(r, col)] += c * lw.exp();
        }
    }
    Ok(out)
}

/// `E[prod g(sqrt(N) lambda_i)]` for Ginibre eigenvalues, in log domain.
pub fn ginibre_product_stat_log(n: usize, g: &MixedPolynomial) -> Result<LogComplex, ExactError> {
    let idx: Vec<usize> = (1..=n).collect();
    Ok(log_det(&symmetric_matrix(&idx, g, 1, &MomentTable::GinibreUnscaled)?)?)
}

pub fn ginibre_product_stat(n: usize, g: &MixedPolynomial) -> Result<Complex64, ExactError> {
    Ok(ginibre_product_stat_log(n, g)?.to_complex())
}

/// The raw moment matrix `f_ij = (1/(j-1)!) sum c_(a,b) m(i-1+a, j-1+b)`.
pub fn ginibre_moment_matrix(n: usize, g: &MixedPolynomial) -> ComplexMatrix {
    let table = MomentTable::GinibreUnscaled;
    let mut f = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for (a, b, c) in g.terms() {
            let row = i as i64 + a as i64;
            let j = row - b as i64;
            if j < 0 || j >= n as i64 {
                continue;
            }
            let lw = table.log_diagonal(row as u32).unwrap() - table.log_diagonal(j as u32).unwrap();
            f[(i, j as usize)] += c * lw.exp();
        }
    }
    f
}

/// `E[prod_(i in I_k) g(N^(M/2) lambda_i)]` for the Power-Ginibre block.
pub fn power_ginibre_product_stat_log(n: usize, m: usize, k: usize, g: &MixedPolynomial) -> Result<LogComplex, ExactError> {
    let block = ProgressionIndex::new(n, m, k)?;
    let idx = block.indices();
    if idx.is_empty() {
        return Ok(LogComplex::ONE);
    }
    Ok(log_det(&symmetric_matrix(&idx, g, m as u32, &MomentTable::GinibreUnscaled)?)?)
}

pub fn power_ginibre_product_stat(n: usize, m: usize, k: usize, g: &MixedPolynomial) -> Result<Complex64, ExactError> {
    Ok(power_ginibre_product_stat_log(n, m, k, g)?.to_complex())
}

/// `E[prod g(z_i)]` for the radially symmetric ensemble with potential `V`.
pub fn radial_product_stat(n: usize, v: &RadialPotential, g: &MixedPolynomial) -> Result<Complex64, ExactError> {
    let idx: Vec<usize> = (1..=n).collect();
    let table = MomentTable::RadialPotential(v.clone());
    Ok(log_det(&symmetric_matrix(&idx, g, 1, &table)?)?.to_complex())
}

/// `|E_Gin(N)[prod P(z^M)] - prod_k E_Gin(N,M,k)[prod P]| / (1 + |lhs|)`.
pub fn decomposition_identity_residual(n: usize, m: usize, p: &MixedPolynomial) -> Result<f64, ExactError> {
    let lhs = ginibre_product_stat(n, &p.power_compose(m as u32))?;
    let mut rhs = LogComplex::ONE;
    for k in 1..=m {
        rhs = rhs * power_ginibre_product_stat_log(n, m, k, p)?;
    }
    Ok((lhs - rhs.to_complex()).norm() / (1.0 + lhs.norm()))
}
