use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::{Div, Mul};

/// A complex number stored as `exp(log_modulus + i*phase)`.
///
/// Zero is represented by `log_modulus == -inf`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LogComplex {
    pub log_modulus: f64,
    pub phase: f64,
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_phase(p: f64) -> f64 {
    let mut q = p.rem_euclid(2.0 * PI);
    if q > PI {
        q -= 2.0 * PI;
    }
    q
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex { log_modulus: f64::NEG_INFINITY, phase: 0.0 };
    pub const ONE: LogComplex = LogComplex { log_modulus: 0.0, phase: 0.0 };

    pub fn new(log_modulus: f64, phase: f64) -> Self {
        if log_modulus == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex { log_modulus, phase: wrap_phase(phase) }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn is_zero(self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.phase)
    }

    /// Real part of the value, for results known to be real.
    pub fn to_real(self) -> f64 {
        self.to_complex().re
    }

    pub fn conj(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_modulus, -self.phase)
    }

    pub fn inv(self) -> Self {
        Self::new(-self.log_modulus, -self.phase)
    }

    pub fn powi(self, n: i32) -> Self {
        if self.is_zero() {
            return if n == 0 { Self::ONE } else { self };
        }
        Self::new(self.log_modulus * n as f64, self.phase * n as f64)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        LogComplex::new(self.log_modulus + rhs.log_modulus, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        self * rhs.inv()
    }
}

impl std::iter::Product for LogComplex {
    fn product<I: Iterator<Item = LogComplex>>(iter: I) -> Self {
        iter.fold(LogComplex::ONE, |a, b| a * b)
    }
}
