use super::LatentError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Largest `(N, p)` expanded unless the guard is raised.
pub const DEFAULT_GUARD: (usize, u32) = (6, 4);

/// Exact coefficients `K_{N,p}(u)` of `Delta(T)^p = prod_{i<j} (T_i - T_j)^p`,
/// keyed by exponent vector in lexicographic order. Only nonzero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatentWeightTable {
    pub n: usize,
    pub p: u32,
    pub entries: BTreeMap<Vec<u32>, BigInt>,
    /// Number of terms after each factor was multiplied in.
    pub term_counts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    #[serde(rename = "N")]
    n: usize,
    p: u32,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    u: Vec<u32>,
    #[serde(rename = "K")]
    k: String,
}

/// Expands `Delta^p` by multiplying in the `p N(N-1)/2` linear factors.
pub fn expand_vandermonde_power(n: usize, p: u32) -> Result<LatentWeightTable, LatentError> {
    expand_vandermonde_power_guarded(n, p, DEFAULT_GUARD)
}

pub fn expand_vandermonde_power_guarded(n: usize, p: u32, guard: (usize, u32)) -> Result<LatentWeightTable, LatentError> {
    if n == 0 || p == 0 {
        return Err(LatentError::InvalidParameter("need N >= 1 and p >= 1".into()));
    }
    if n > guard.0 || p > guard.1 {
        return Err(LatentError::Guard { n, p });
    }
    let mut poly: HashMap<Vec<u32>, BigInt> = HashMap::new();
    poly.insert(vec![0; n], BigInt::one());
    let mut term_counts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for _ in 0..p {
                let mut next: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(poly.len() * 2);
                for (e, c) in &poly {
                    let mut ei = e.clone();
                    ei[i] += 1;
                    *next.entry(ei).or_insert_with(BigInt::zero) += c;
                    let mut ej = e.clone();
                    ej[j] += 1;
                    *next.entry(ej).or_insert_with(BigInt::zero) -= c;
                }
                next.retain(|_, c| !c.is_zero());
                term_counts.push(next.len());
                poly = next;
            }
        }
    }
    Ok(LatentWeightTable { n, p, entries: poly.into_iter().collect(), term_counts })
}

impl LatentWeightTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coefficient(&self, u: &[u32]) -> BigInt {
        self.entries.get(u).cloned().unwrap_or_default()
    }

    /// `sum_u K(u) prod T_i^u_i` in exact integer arithmetic.
    pub fn evaluate(&self, t: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (u, c) in &self.entries {
            let mut term = c.clone();
            for (ti, &ui) in t.iter().zip(u) {
                term *= num_traits::pow(ti.clone(), ui as usize);
            }
            s += term;
        }
        s
    }

    /// Total degree every stored exponent vector must have.
    pub fn degree(&self) -> u32 {
        self.p * (self.n * (self.n - 1) / 2) as u32
    }

    pub fn max_exponent(&self) -> u32 {
        self.p * (self.n as u32 - 1)
    }

    pub fn to_json(&self) -> String {
        let j = TableJson {
            n: self.n,
            p: self.p,
            entries: self.entries.iter().map(|(u, k)| EntryJson { u: u.clone(), k: k.to_string() }).collect(),
        };
        serde_json::to_string_pretty(&j).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, LatentError> {
        let j: TableJson = serde_json::from_str(s)?;
        let mut entries = BTreeMap::new();
        for e in j.entries {
            if e.u.len() != j.n {
                return Err(LatentError::Parse(format!("exponent vector {:?} has length != N = {}", e.u, j.n)));
            }
            let k: BigInt = e.k.parse().map_err(|_| LatentError::Parse(format!("bad integer {:?}", e.k)))?;
            entries.insert(e.u, k);
        }
        Ok(LatentWeightTable { n: j.n, p: j.p, entries, term_counts: Vec::new() })
    }
}

/// `ln |k|` for a big integer.
pub fn log_abs_bigint(k: &BigInt) -> f64 {
    if k.is_zero() {
        return f64::NEG_INFINITY;
    }
    let a = k.abs();
    let bits = a.bits();
    if bits <= 1000 {
        let (_, digits) = a.to_u64_digits();
        let mut x = 0.0f64;
        for d in digits.iter().rev() {
            x = x * 18446744073709551616.0 + *d as f64;
        }
        return x.ln();
    }
    let shift = bits - 64;
    let top: BigInt = &a >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
