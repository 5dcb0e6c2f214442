//! QUBO representation and the affine QUBO -> Ising transformation.

use crate::error::ModelError;
use crate::model::IsingModel;

/// One upper-triangular QUBO matrix entry (`i <= j`, diagonal included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuboEntry {
    pub i: u32,
    pub j: u32,
    pub value: f64,
}

/// Quadratic unconstrained binary optimization problem over x in {0,1}^n,
/// with objective `sum_{i<=j} Q_ij x_i x_j`.
#[derive(Debug, Clone)]
pub struct QuboProblem {
    n: usize,
    entries: Vec<QuboEntry>,
}

impl QuboProblem {
    /// Build from matrix entries given in any pair order; pairs are
    /// normalized to `i <= j` and duplicates rejected.
    pub fn new(n: usize, entries: Vec<(usize, usize, f64)>) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptyModel);
        }
        let mut normalized = Vec::with_capacity(entries.len());
        for (u, v, value) in entries {
            if u >= n || v >= n {
                return Err(ModelError::QuboIndexOutOfRange { i: u, j: v, n });
            }
            if !value.is_finite() {
                return Err(ModelError::NonFiniteCoupling { i: u, j: v });
            }
            let (i, j) = if u <= v { (u, v) } else { (v, u) };
            normalized.push(QuboEntry {
                i: i as u32,
                j: j as u32,
                value,
            });
        }
        normalized.sort_by_key(|e| (e.i, e.j));
        for w in normalized.windows(2) {
            if w[0].i == w[1].i && w[0].j == w[1].j {
                return Err(ModelError::DuplicateQuboEntry {
                    i: w[0].i as usize,
                    j: w[0].j as usize,
                });
            }
        }
        Ok(Self {
            n,
            entries: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[QuboEntry] {
        &self.entries
    }

    /// Objective value for a binary assignment (entries are 0 or 1).
    pub fn objective(&self, x: &[u8]) -> Result<f64, ModelError> {
        if x.len() != self.n {
            return Err(ModelError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut total = 0.0;
        for e in &self.entries {
            total += e.value * f64::from(x[e.i as usize] * x[e.j as usize]);
        }
        Ok(total)
    }
}

/// Convert a QUBO to an Ising model under the substitution `s_i = 2 x_i - 1`.
///
/// For every binary assignment x, the QUBO objective equals
/// `model.energy(s) + offset`.
pub fn qubo_to_ising(q: &QuboProblem) -> (IsingModel, f64) {
    let n = q.n();
    let mut fields = vec![0.0f64; n];
    let mut couplings = Vec::new();
    let mut offset = 0.0f64;
    for e in q.entries() {
        let (i, j) = (e.i as usize, e.j as usize);
        if i == j {
            // Q_ii x_i = Q_ii (s_i + 1) / 2
            fields[i] -= e.value / 2.0;
            offset += e.value / 2.0;
        } else {
            // Q_ij x_i x_j = Q_ij (s_i s_j + s_i + s_j + 1) / 4
            couplings.push((i, j, -e.value / 4.0));
            fields[i] -= e.value / 4.0;
            fields[j] -= e.value / 4.0;
            offset += e.value / 4.0;
        }
    }
    // Construction cannot fail: indices and finiteness were validated on
    // the QUBO side and pairs are unique with i < j.
    let model = IsingModel::new(n, couplings, fields).expect("validated QUBO entries");
    (model, offset)
}
