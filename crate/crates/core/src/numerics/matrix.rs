use super::{LogComplex, NumericsError, ProgressionIndex};
use num_complex::Complex64;
use std::ops::{Index, IndexMut};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new(1.0, 0.0);
        }
        a
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let mut a = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            a[(i, i)] = x;
        }
        a
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (first, second) = self.data.split_at_mut(hi * c);
        first[lo * c..(lo + 1) * c].swap_with_slice(&mut second[..c]);
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = other.row(l);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Restriction to the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ComplexMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

const SINGULAR_PIVOT: f64 = 1e-300;

/// Log-domain determinant by LU with partial pivoting.
///
/// A pivot of modulus below 1e-300 yields `LogComplex::ZERO`.
pub fn log_det(a: &ComplexMatrix) -> Result<LogComplex, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    if !a.is_finite() {
        return Err(NumericsError::NonFinite("matrix entry"));
    }
    let n = a.n_rows();
    let mut lu = a.clone();
    let mut log_mod = 0.0;
    let mut phase = 0.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = lu[(col, col)].norm();
        for r in col + 1..n {
            let v = lu[(r, col)].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < SINGULAR_PIVOT {
            return Ok(LogComplex::ZERO);
        }
        if piv != col {
            lu.swap_rows(piv, col);
            phase += std::f64::consts::PI;
        }
        let p = lu[(col, col)];
        log_mod += best.ln();
        phase += p.arg();
        let pinv = p.inv();
        for r in col + 1..n {
            let f = lu[(r, col)] * pinv;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for c in col + 1..n {
                let u = lu[(col, c)];
                lu[(r, c)] -= f * u;
            }
        }
    }
    Ok(LogComplex::new(log_mod, phase))
}

/// Determinant of an M-striped matrix as the product of its residue-class
/// minors. Off-stripe entries must be exactly zero.
pub fn striped_det(a: &ComplexMatrix, m: usize) -> Result<LogComplex, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::NotSquare { rows: a.n_rows(), cols: a.n_cols() });
    }
    if m == 0 {
        return Err(NumericsError::ZeroModulus);
    }
    let n = a.n_rows();
    for i in 0..n {
        for j in 0..n {
            if !(i + m - j % m).is_multiple_of(m) {
                let z = a[(i, j)];
                if z.re != 0.0 || z.im != 0.0 {
                    return Err(NumericsError::NotStriped { m, i, j });
                }
            }
        }
    }
    let mut acc = LogComplex::ONE;
    for block in ProgressionIndex::partition(n, m)? {
        let idx: Vec<usize> = block.indices().iter().map(|i| i - 1).collect();
        if idx.is_empty() {
            continue;
        }
        acc = acc * log_det(&a.submatrix(&idx, &idx))?;
    }
    Ok(acc)
}
