use super::NumericsError;

/// The residue class `I_k = { i in 1..=N : i = k mod M }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ProgressionIndex {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl ProgressionIndex {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self, NumericsError> {
        if m == 0 {
            return Err(NumericsError::ZeroModulus);
        }
        if k == 0 || k > m {
            return Err(NumericsError::ResidueOutOfRange { m, k });
        }
        Ok(ProgressionIndex { n, m, k })
    }

    /// All M classes of `1..=n`.
    pub fn partition(n: usize, m: usize) -> Result<Vec<Self>, NumericsError> {
        (1..=m.max(1)).map(|k| Self::new(n, m, k)).collect()
    }

    /// 1-based indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        (self.k..=self.n).step_by(self.m).collect()
    }

    pub fn cardinality(&self) -> usize {
        if self.k > self.n {
            0
        } else {
            (self.n - self.k) / self.m + 1
        }
    }

    /// The count `ceil((N-k)/M)` as printed in the CUE discussion; kept for
    /// reporting because it disagrees with `cardinality`.
    pub fn ceiling_count(&self) -> usize {
        if self.k >= self.n {
            0
        } else {
            (self.n - self.k).div_ceil(self.m)
        }
    }
}
