use super::eigen::{eigenvalues_with_retry, haar_isometry, hermitian_eigenvalues, lu_solve};
use super::{standard_complex_normal, standard_normal, PointSample, RngStream, SamplerError, Scaling};
use crate::numerics::ComplexMatrix;
use num_complex::Complex64;

pub const DEFAULT_MAX_DIMENSION: usize = 512;

fn check_dim(n: usize, limit: usize) -> Result<(), SamplerError> {
    if n == 0 {
        return Err(SamplerError::InvalidParameter("dimension must be positive".into()));
    }
    if n > limit {
        return Err(SamplerError::DimensionGuard { n, limit });
    }
    Ok(())
}

fn gaussian_matrix(n: usize, sd: f64, rng: &mut RngStream) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| standard_complex_normal(rng) * sd)
}

/// Eigenvalues of an `N x N` matrix of i.i.d. `N_C(0, 1/N)` entries.
pub fn sample_ginibre(n: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    sample_ginibre_guarded(n, DEFAULT_MAX_DIMENSION, rng)
}

pub fn sample_ginibre_guarded(n: usize, limit: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n, limit)?;
    let seed = rng.seed();
    let g = gaussian_matrix(n, 1.0 / (n as f64).sqrt(), rng);
    let ev = eigenvalues_with_retry(&g, rng)?;
    Ok(PointSample::new(ev, "ginibre", n, Scaling::Scaled, seed))
}

/// `Gin(N)^M`: the M-th powers of one Ginibre spectrum.
pub fn sample_ginibre_power(n: usize, m: usize, limit: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    let s = sample_ginibre_guarded(n, limit, rng)?;
    let pts = s.powers(m as u32);
    Ok(PointSample::new(pts, "ginibre-power", n, Scaling::Scaled, s.meta.seed).with_block(m, None))
}

pub fn sample_cue(n: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n, DEFAULT_MAX_DIMENSION)?;
    let seed = rng.seed();
    let u = haar_isometry(n, n, rng);
    let ev = eigenvalues_with_retry(&u, rng)?;
    Ok(PointSample::new(ev, "cue", n, Scaling::Unscaled, seed))
}

/// Eigenvalues of the Hermitian matrix with real `N(0,1)` diagonal and
/// `N_C(0,1)` off-diagonal entries; joint density
/// `prod |x_i - x_j|^2 e^(-sum x_i^2 / 2)`.
pub fn sample_gue(n: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n, DEFAULT_MAX_DIMENSION)?;
    let seed = rng.seed();
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex64::new(standard_normal(rng), 0.0);
        for j in i + 1..n {
            let z = standard_complex_normal(rng);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    let ev = hermitian_eigenvalues(&h)?;
    let pts = ev.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
    Ok(PointSample::new(pts, "gue", n, Scaling::Unscaled, seed))
}

/// Top-left `N x N` block of a Haar unitary of size `N + n`.
pub fn sample_truncated_unitary(n_dim: usize, n: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n_dim + n, DEFAULT_MAX_DIMENSION)?;
    if n == 0 {
        return Err(SamplerError::InvalidParameter("truncation size must be positive".into()));
    }
    let seed = rng.seed();
    let q = haar_isometry(n_dim + n, n_dim, rng);
    let block = ComplexMatrix::from_fn(n_dim, n_dim, |i, j| q[(i, j)]);
    let ev = eigenvalues_with_retry(&block, rng)?;
    Ok(PointSample::new(ev, "truncated-unitary", n_dim, Scaling::Unscaled, seed))
}

/// Eigenvalues of `G1^{-1} G2`; `G1` is redrawn when its smallest
/// singular value is below `1e-10`.
pub fn sample_spherical(n: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n, DEFAULT_MAX_DIMENSION)?;
    let seed = rng.seed();
    let mut retries = 0;
    let g1 = loop {
        let g1 = gaussian_matrix(n, 1.0, rng);
        let gram = g1.conj_transpose().matmul(&g1);
        let smin = hermitian_eigenvalues(&gram)?[0].max(0.0).sqrt();
        if smin >= 1e-10 {
            break g1;
        }
        retries += 1;
        if retries > 3 {
            return Err(SamplerError::NearSingular(3));
        }
    };
    let g2 = gaussian_matrix(n, 1.0, rng);
    let x = lu_solve(&g1, &g2)?;
    let ev = eigenvalues_with_retry(&x, rng)?;
    Ok(PointSample::new(ev, "spherical", n, Scaling::Unscaled, seed))
}

/// Eigenvalues of a product of `count` independent unscaled Ginibre
/// matrices.
pub fn sample_ginibre_product(n: usize, count: usize, rng: &mut RngStream) -> Result<PointSample, SamplerError> {
    check_dim(n, DEFAULT_MAX_DIMENSION)?;
    if count == 0 {
        return Err(SamplerError::InvalidParameter("product needs at least one factor".into()));
    }
    let seed = rng.seed();
    let mut p = gaussian_matrix(n, 1.0, rng);
    for _ in 1..count {
        p = p.matmul(&gaussian_matrix(n, 1.0, rng));
    }
    let ev = eigenvalues_with_retry(&p, rng)?;
    Ok(PointSample::new(ev, "ginibre-product", n, Scaling::Unscaled, seed).with_block(count, None))
}
