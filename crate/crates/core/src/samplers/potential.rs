use crate::numerics::quadrature::{integrate, integrate_to_infinity};
use crate::numerics::{log_beta, log_gamma};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

type VFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Quadratic,
    /// weight (1-t)^(n-1) on [0,1]
    TruncatedUnitary { n: u32 },
    /// weight (1+t)^-(N+1)
    Spherical { n: u32 },
    Custom { v: VFn, cache: Arc<RwLock<HashMap<u64, f64>>> },
}

/// A radial potential `V` on `[0, inf)` together with its moment functional
/// `Gamma_V(alpha) = int_0^inf t^(alpha-1) e^(-V(t)) dt`.
#[derive(Clone)]
pub struct RadialPotential {
    name: String,
    kind: Kind,
}

impl fmt::Debug for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialPotential({})", self.name)
    }
}

impl RadialPotential {
    /// `V(t) = t`, so `Gamma_V = Gamma`.
    pub fn quadratic() -> Self {
        RadialPotential { name: "quadratic".into(), kind: Kind::Quadratic }
    }

    /// Truncated unitary ensemble with `n` removed dimensions.
    pub fn truncated_unitary(n: u32) -> Self {
        assert!(n >= 1, "truncated unitary needs n >= 1");
        RadialPotential { name: format!("truncated-unitary(n={n})"), kind: Kind::TruncatedUnitary { n } }
    }

    /// Spherical ensemble of size `n`.
    pub fn spherical(n: u32) -> Self {
        RadialPotential { name: format!("spherical(N={n})"), kind: Kind::Spherical { n } }
    }

    /// Arbitrary potential; moments by adaptive quadrature, memoized.
    pub fn custom(name: &str, v: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RadialPotential {
            name: name.into(),
            kind: Kind::Custom { v: Arc::new(v), cache: Arc::new(RwLock::new(HashMap::new())) },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.kind, Kind::Quadratic)
    }

    /// `V(t)`, `+inf` outside the support.
    pub fn v(&self, t: f64) -> f64 {
        if t < 0.0 {
            return f64::INFINITY;
        }
        match &self.kind {
            Kind::Quadratic => t,
            Kind::TruncatedUnitary { n } => {
                if t >= 1.0 {
                    if *n == 1 && t == 1.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    -((*n as f64) - 1.0) * (1.0 - t).ln()
                }
            }
            Kind::Spherical { n } => (*n as f64 + 1.0) * (1.0 + t).ln(),
            Kind::Custom { v, .. } => v(t),
        }
    }

    /// Upper end of the support of `e^(-V)`.
    pub fn support_end(&self) -> f64 {
        match self.kind {
            Kind::TruncatedUnitary { .. } => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn moment_is_finite(&self, alpha: f64) -> bool {
        if !(alpha > 0.0) {
            return false;
        }
        match &self.kind {
            Kind::Spherical { n } => alpha < *n as f64 + 1.0,
            Kind::Custom { .. } => self.log_gamma_v(alpha).is_finite(),
            _ => true,
        }
    }

    /// `ln Gamma_V(alpha)`; `+inf` when the moment diverges.
    pub fn log_gamma_v(&self, alpha: f64) -> f64 {
        if !(alpha > 0.0) {
            return f64::INFINITY;
        }
        match &self.kind {
            Kind::Quadratic => log_gamma(alpha),
            Kind::TruncatedUnitary { n } => log_beta(alpha, *n as f64),
            Kind::Spherical { n } => {
                let b = *n as f64 + 1.0 - alpha;
                if b <= 0.0 {
                    f64::INFINITY
                } else {
                    log_beta(alpha, b)
                }
            }
            Kind::Custom { v, cache } => {
                let key = alpha.to_bits();
                if let Some(x) = cache.read().unwrap().get(&key) {
                    return *x;
                }
                let x = quadrature_log_gamma_v(&**v, alpha, f64::INFINITY);
                cache.write().unwrap().insert(key, x);
                x
            }
        }
    }

    /// Log-density of the `Gamma_V(alpha)` distribution at `t`.
    pub fn log_density(&self, alpha: f64, t: f64) -> f64 {
        if t <= 0.0 {
            return f64::NEG_INFINITY;
        }
        (alpha - 1.0) * t.ln() - self.v(t) - self.log_gamma_v(alpha)
    }
}

/// `ln int t^(alpha-1) e^(-V(t)) dt` by adaptive quadrature, splitting at
/// the mode of the integrand and substituting `t = s^(1/alpha)` near 0.
pub fn quadrature_log_gamma_v(v: &dyn Fn(f64) -> f64, alpha: f64, end: f64) -> f64 {
    // log integrand shift to keep values O(1)
    let logf = |t: f64| (alpha - 1.0) * t.ln() - v(t);
    let mut peak = f64::NEG_INFINITY;
    let mut t = 1e-6;
    while t < 1e6 && t < end {
        peak = peak.max(logf(t));
        t *= 1.05;
    }
    if !peak.is_finite() {
        return f64::INFINITY;
    }
    // near zero: t = s^(1/alpha), dt = s^(1/alpha - 1)/alpha ds, t^(alpha-1) dt = ds/alpha
    let split = 1.0f64.min(end);
    let s_end = split.powf(alpha);
    let head = integrate(
        |s| {
            if s <= 0.0 {
                return (-v(0.0) - peak).exp() / alpha;
            }
            let t = s.powf(1.0 / alpha);
            (-v(t) - peak).exp() / alpha
        },
        0.0,
        s_end,
        1e-300,
        1e-13,
    );
    let tail = if end > split {
        if end.is_finite() {
            integrate(|t| (logf(t) - peak).exp(), split, end, 1e-300, 1e-13)
        } else {
            integrate_to_infinity(|t| (logf(t) - peak).exp(), split, 1e-300, 1e-13)
        }
    } else {
        Ok(0.0)
    };
    match (head, tail) {
        (Ok(h), Ok(t)) if h + t > 0.0 => (h + t).ln() + peak,
        _ => f64::INFINITY,
    }
}
