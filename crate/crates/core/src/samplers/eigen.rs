//! Dense eigensolvers and QR factorizations used by the matrix models.

use super::{standard_complex_normal, SamplerError};
use crate::numerics::ComplexMatrix;
use num_complex::Complex64;
use rand::RngCore;

const DEFLATION_TOL: f64 = 1e-13;
const MAX_ITS_PER_EIGENVALUE: usize = 60;

#[inline]
fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Scales rows and columns by powers of two so that their off-diagonal
/// norms are comparable. Eigenvalues are unchanged.
fn balance(h: &mut [Complex64], n: usize) {
    let radix = 2.0f64;
    let sq = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[j * n + i].norm();
                    r += h[i * n + j].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while c >= g {
                f /= radix;
                c /= sq;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    h[i * n + j] *= inv;
                }
                for j in 0..n {
                    h[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(h: &mut [Complex64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![zero(); n];
    let mut w = vec![zero(); n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let mut alpha2 = 0.0;
        for i in 0..len {
            let x = h[(k + 1 + i) * n + k];
            v[i] = x;
            alpha2 += x.norm_sqr();
        }
        let tail: f64 = alpha2 - v[0].norm_sqr();
        if tail == 0.0 {
            continue;
        }
        let alpha = alpha2.sqrt();
        let x0 = v[0];
        let ph = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let beta = -ph * alpha;
        v[0] = x0 - beta;
        let vnorm2 = v[0].norm_sqr() + tail;
        let tau = 2.0 / vnorm2;
        // left: rows k+1.., columns k+1..
        for x in w[k + 1..n].iter_mut() {
            *x = zero();
        }
        for i in 0..len {
            let vi = v[i].conj();
            let row = &h[(k + 1 + i) * n..(k + 2 + i) * n];
            for j in k + 1..n {
                w[j] += vi * row[j];
            }
        }
        for i in 0..len {
            let f = v[i] * tau;
            let row = &mut h[(k + 1 + i) * n..(k + 2 + i) * n];
            for j in k + 1..n {
                row[j] -= f * w[j];
            }
        }
        h[(k + 1) * n + k] = beta;
        for i in 1..len {
            h[(k + 1 + i) * n + k] = zero();
        }
        // right: all rows, columns k+1..
        for r in 0..n {
            let row = &mut h[r * n + k + 1..r * n + n];
            let mut s = zero();
            for (x, vi) in row.iter().zip(&v[..len]) {
                s += x * vi;
            }
            let f = s * tau;
            for (x, vi) in row.iter_mut().zip(&v[..len]) {
                *x -= f * vi.conj();
            }
        }
    }
}

#[inline]
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64, Complex64) {
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, zero(), a);
    }
    let na = a.norm();
    if na == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0), b);
    }
    let r = na.hypot(nb);
    let ph = a / na;
    (na / r, ph * b.conj() / r, ph * r)
}

#[inline]
fn rot_rows(h: &mut [Complex64], n: usize, p: usize, cols: std::ops::RangeInclusive<usize>, c: f64, s: Complex64) {
    let (top, bottom) = h.split_at_mut((p + 1) * n);
    let rp = &mut top[p * n..];
    let rq = &mut bottom[..n];
    let sc = s.conj();
    for j in cols {
        let x = rp[j];
        let y = rq[j];
        rp[j] = x * c + s * y;
        rq[j] = y * c - sc * x;
    }
}

#[inline]
fn rot_cols(h: &mut [Complex64], n: usize, p: usize, rows: std::ops::RangeInclusive<usize>, c: f64, s: Complex64) {
    let sc = s.conj();
    for r in rows {
        let x = h[r * n + p];
        let y = h[r * n + p + 1];
        h[r * n + p] = x * c + y * sc;
        h[r * n + p + 1] = y * c - x * s;
    }
}

fn wilkinson_shift(h: &[Complex64], n: usize, i: usize) -> Complex64 {
    let mut t = h[i * n + i];
    let u = h[(i - 1) * n + i].sqrt() * h[i * n + i - 1].sqrt();
    let su = u.l1_norm();
    if su != 0.0 {
        let x = (h[(i - 1) * n + i - 1] - t) * 0.5;
        let sx = x.l1_norm();
        let s = su.max(sx);
        let mut y = s * ((x / s) * (x / s) + (u / s) * (u / s)).sqrt();
        if sx > 0.0 {
            let xs = x / sx;
            if xs.re * y.re + xs.im * y.im < 0.0 {
                y = -y;
            }
        }
        t -= u * (u / (x + y));
    }
    t
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift implicit QR,
/// updating only the active window.
fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>, SamplerError> {
    let mut w = vec![zero(); n];
    if n == 0 {
        return Ok(w);
    }
    let smlnum = f64::MIN_POSITIVE * (n as f64 / f64::EPSILON);
    let mut i = n as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut l = 0usize;
        let mut its = 0usize;
        loop {
            let mut k = iu;
            while k > l {
                let sub = h[k * n + k - 1].norm();
                if sub <= smlnum {
                    break;
                }
                let mut tst = h[(k - 1) * n + k - 1].norm() + h[k * n + k].norm();
                if tst == 0.0 {
                    if k >= 2 {
                        tst += h[(k - 1) * n + k - 2].norm();
                    }
                    if k < iu {
                        tst += h[(k + 1) * n + k].norm();
                    }
                }
                if sub <= DEFLATION_TOL * tst {
                    break;
                }
                k -= 1;
            }
            l = k;
            if l > 0 {
                h[l * n + l - 1] = zero();
            }
            if l >= iu {
                break;
            }
            if its >= MAX_ITS_PER_EIGENVALUE {
                return Err(SamplerError::EigenNoConvergence { index: iu, iterations: its });
            }
            let shift = if its > 0 && its % 20 == 10 {
                Complex64::new(0.75 * h[(l + 1) * n + l].re.abs(), 0.0) + h[l * n + l]
            } else if its > 0 && its.is_multiple_of(20) {
                Complex64::new(0.75 * h[iu * n + iu - 1].re.abs(), 0.0) + h[iu * n + iu]
            } else {
                wilkinson_shift(h, n, iu)
            };
            // first rotation from the shifted first column
            let (c, s, _) = givens(h[l * n + l] - shift, h[(l + 1) * n + l]);
            rot_rows(h, n, l, l..=iu, c, s);
            rot_cols(h, n, l, l..=(l + 2).min(iu), c, s);
            for k in l + 1..iu {
                let (c, s, r) = givens(h[k * n + k - 1], h[(k + 1) * n + k - 1]);
                h[k * n + k - 1] = r;
                h[(k + 1) * n + k - 1] = zero();
                rot_rows(h, n, k, k..=iu, c, s);
                rot_cols(h, n, k, l..=(k + 2).min(iu), c, s);
            }
            its += 1;
        }
        w[iu] = h[iu * n + iu];
        i -= 1;
    }
    Ok(w)
}

/// Eigenvalues of a square complex matrix (balancing, Hessenberg
/// reduction, shifted QR).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>, SamplerError> {
    if !a.is_square() {
        return Err(SamplerError::InvalidParameter(format!("{}x{} matrix is not square", a.n_rows(), a.n_cols())));
    }
    if !a.is_finite() {
        return Err(SamplerError::InvalidParameter("non-finite matrix entry".into()));
    }
    let n = a.n_rows();
    let mut h = a.as_slice().to_vec();
    balance(&mut h, n);
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

/// As `eigenvalues`, retrying once after a random unitary similarity
/// (a Householder reflection) if the QR iteration stalls.
pub fn eigenvalues_with_retry(a: &ComplexMatrix, rng: &mut impl RngCore) -> Result<Vec<Complex64>, SamplerError> {
    match eigenvalues(a) {
        Ok(w) => Ok(w),
        Err(SamplerError::EigenNoConvergence { .. }) => eigenvalues(&random_reflection_similarity(a, rng)),
        Err(e) => Err(e),
    }
}

fn random_reflection_similarity(a: &ComplexMatrix, rng: &mut impl RngCore) -> ComplexMatrix {
    let n = a.n_rows();
    let v: Vec<Complex64> = (0..n).map(|_| standard_complex_normal(rng)).collect();
    let tau = 2.0 / v.iter().map(|x| x.norm_sqr()).sum::<f64>();
    // B = H A H with H = I - tau v v^*
    let mut b = a.clone();
    let mut w = vec![zero(); n];
    for i in 0..n {
        let vi = v[i].conj();
        for j in 0..n {
            w[j] += vi * b[(i, j)];
        }
    }
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] -= tau * v[i] * w[j];
        }
    }
    for i in 0..n {
        let s: Complex64 = (0..n).map(|j| b[(i, j)] * v[j]).sum();
        for j in 0..n {
            b[(i, j)] -= tau * s * v[j].conj();
        }
    }
    b
}

/// Eigenvalues of a Hermitian matrix in ascending order: Householder
/// tridiagonalization, phase removal, then implicit QL.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, SamplerError> {
    if !a.is_square() {
        return Err(SamplerError::InvalidParameter("matrix is not square".into()));
    }
    let n = a.n_rows();
    let mut h = a.as_slice().to_vec();
    hessenberg(&mut h, n);
    let mut d: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    let mut e: Vec<f64> = (0..n).map(|i| if i + 1 < n { h[(i + 1) * n + i].norm() } else { 0.0 }).collect();
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|x, y| x.total_cmp(y));
    Ok(d)
}

/// Implicit QL for a real symmetric tridiagonal matrix; `e[i]` couples
/// `i` and `i+1`. Eigenvalues are left in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), SamplerError> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITS_PER_EIGENVALUE {
                return Err(SamplerError::EigenNoConvergence { index: l, iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m as isize - 1;
            let mut underflow = false;
            while i >= l as isize {
                let iu = i as usize;
                let f = s * e[iu];
                let b = c * e[iu];
                r = f.hypot(g);
                e[iu + 1] = r;
                if r == 0.0 {
                    d[iu + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[iu + 1] - p;
                r = (d[iu] - g) * s + 2.0 * c * b;
                p = s * r;
                d[iu + 1] = g + p;
                g = c * r - b;
                i -= 1;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// A `rows x cols` matrix with orthonormal columns: the first `cols`
/// columns of a Haar unitary, from Householder QR of a complex Gaussian
/// matrix with the diagonal of R made positive.
pub fn haar_isometry(rows: usize, cols: usize, rng: &mut impl RngCore) -> ComplexMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows");
    let mut a = ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex_normal(rng));
    let mut reflectors: Vec<(Vec<Complex64>, f64)> = Vec::with_capacity(cols);
    let mut phases = vec![Complex64::new(1.0, 0.0); cols];
    for k in 0..cols {
        let mut v: Vec<Complex64> = (k..rows).map(|i| a[(i, k)]).collect();
        let alpha2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let alpha = alpha2.sqrt();
        let x0 = v[0];
        let ph = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let beta = -ph * alpha;
        v[0] = x0 - beta;
        let vn2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        let tau = if vn2 == 0.0 { 0.0 } else { 2.0 / vn2 };
        for j in k..cols {
            let s: Complex64 = (k..rows).map(|i| v[i - k].conj() * a[(i, j)]).sum();
            for i in k..rows {
                a[(i, j)] -= tau * v[i - k] * s;
            }
        }
        // R_kk = beta; column phase correction makes it positive
        phases[k] = if beta.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { beta / beta.norm() };
        reflectors.push((v, tau));
    }
    let mut q = ComplexMatrix::zeros(rows, cols);
    for j in 0..cols {
        q[(j, j)] = Complex64::new(1.0, 0.0);
    }
    for k in (0..cols).rev() {
        let (v, tau) = &reflectors[k];
        for j in 0..cols {
            let s: Complex64 = (k..rows).map(|i| v[i - k].conj() * q[(i, j)]).sum();
            for i in k..rows {
                q[(i, j)] -= *tau * v[i - k] * s;
            }
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            q[(i, j)] *= phases[j];
        }
    }
    q
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, SamplerError> {
    let n = a.n_rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| lu[(i, col)].norm().total_cmp(&lu[(j, col)].norm())).unwrap();
        if lu[(piv, col)].norm() == 0.0 {
            return Err(SamplerError::Singular);
        }
        lu.swap_rows(piv, col);
        x.swap_rows(piv, col);
        let inv = lu[(col, col)].inv();
        for r in col + 1..n {
            let f = lu[(r, col)] * inv;
            for c in col..n {
                let u = lu[(col, c)];
                lu[(r, c)] -= f * u;
            }
            for c in 0..x.n_cols() {
                let u = x[(col, c)];
                x[(r, c)] -= f * u;
            }
        }
    }
    for col in (0..n).rev() {
        let inv = lu[(col, col)].inv();
        for c in 0..x.n_cols() {
            let mut s = x[(col, c)];
            for k in col + 1..n {
                s -= lu[(col, k)] * x[(k, c)];
            }
            x[(col, c)] = s * inv;
        }
    }
    Ok(x)
}
