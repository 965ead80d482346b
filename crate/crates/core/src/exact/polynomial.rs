use num_complex::Complex64;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

/// Sparse mixed polynomial `P(Z, conj Z) = sum c_(a,b) Z^a conj(Z)^b`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MixedPolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl MixedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Complex64)>) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// `sum_n c_n |Z|^(2n)`.
    pub fn radial(coeffs: &[f64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(n, &c)| ((n as u32, n as u32), Complex64::new(c, 0.0))))
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Complex64) {
        let e = self.terms.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.re == 0.0 && e.im == 0.0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_zbar(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Total degree `max(a+b)`.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    pub fn reldeg(a: u32, b: u32) -> i64 {
        a as i64 - b as i64
    }

    pub fn is_radial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == b)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms.iter().map(|(&(a, b), &c)| c * z.powu(a) * zb.powu(b)).sum()
    }

    /// `P(Z^M, conj(Z)^M)`.
    pub fn power_compose(&self, m: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), &c)| ((a * m, b * m), c)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, &c)| (k, c * s)))
    }
}

impl Add for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn add(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut p = self.clone();
        for (a, b, c) in rhs.terms() {
            p.add_term(a, b, c);
        }
        p
    }
}

impl Sub for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn sub(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut p = self.clone();
        for (a, b, c) in rhs.terms() {
            p.add_term(a, b, -c);
        }
        p
    }
}

impl Mul for &MixedPolynomial {
    type Output = MixedPolynomial;
    fn mul(self, rhs: &MixedPolynomial) -> MixedPolynomial {
        let mut p = MixedPolynomial::zero();
        for (a, b, c) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                p.add_term(a + a2, b + b2, c * c2);
            }
        }
        p
    }
}
