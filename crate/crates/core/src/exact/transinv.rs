use super::{ExactError, MixedPolynomial};
use crate::numerics::{log_det, log_factorial, ComplexMatrix};
use num_complex::Complex64;

/// Reference measure for the shifted-monomial determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftTable {
    /// Uniform measure on the unit circle.
    Cue,
    /// `pi^-1 e^(-|z|^2) dm`.
    Gaussian,
}

impl ShiftTable {
    fn moment(self, a: u32, b: u32) -> f64 {
        if a != b {
            return 0.0;
        }
        match self {
            ShiftTable::Cue => 1.0,
            ShiftTable::Gaussian => log_factorial(a as u64).exp(),
        }
    }
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `det( int (l - z1)^i conj(l - z2)^j g(l) mu(dl) )_(i,j = 0..n)`.
pub fn shifted_determinant(table: ShiftTable, g: &MixedPolynomial, n: usize, z1: Complex64, z2: Complex64) -> Result<Complex64, ExactError> {
    let size = n + 1;
    let mut base = ComplexMatrix::zeros(size, size);
    for a in 0..size {
        for b in 0..size {
            base[(a, b)] = g.terms().map(|(c, d, coef)| coef * table.moment(a as u32 + c, b as u32 + d)).sum();
        }
    }
    let f = ComplexMatrix::from_fn(size, size, |i, j| {
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..=i {
            let la = binom(i as u32, a as u32) * (-z1).powu((i - a) as u32);
            for b in 0..=j {
                let lb = binom(j as u32, b as u32) * (-z2.conj()).powu((j - b) as u32);
                s += la * lb * base[(a, b)];
            }
        }
        s
    });
    Ok(log_det(&f)?.to_complex())
}

/// Largest `|det(z1,z2) - det(0,0)| / (1 + |det(0,0)|)` over the shifts.
pub fn translation_invariance_check(
    table: ShiftTable,
    g: &MixedPolynomial,
    n: usize,
    shifts: &[(Complex64, Complex64)],
) -> Result<f64, ExactError> {
    let zero = Complex64::new(0.0, 0.0);
    let d0 = shifted_determinant(table, g, n, zero, zero)?;
    let mut worst: f64 = 0.0;
    for &(z1, z2) in shifts {
        let d = shifted_determinant(table, g, n, z1, z2)?;
        worst = worst.max((d - d0).norm() / (1.0 + d0.norm()));
    }
    Ok(worst)
}
