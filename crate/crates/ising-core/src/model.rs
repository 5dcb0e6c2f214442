//! Ising problem representation and energy evaluation.
//!
//! The energy convention is
//!
//! ```text
//! H = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i,      s_i = +1 or -1
//! ```
//!
//! with each unordered pair counted once. Couplings are stored sparsely,
//! once per pair with `i < j`; fields are dense.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// One coupling term, normalized so `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub i: u32,
    pub j: u32,
    pub value: f64,
}

/// Optional instance annotations carried through file I/O.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelMetadata {
    /// Instance name, usually the file stem.
    pub name: Option<String>,
    /// Logical-graph size label (e.g. the side of a square grid).
    pub logical_size: Option<u32>,
    /// Certified or reference ground energy, when known.
    pub ground_energy: Option<f64>,
}

/// Symmetric sparse adjacency in CSR layout, with every coupling stored in
/// both directions. This is the view the dynamics inner loop iterates over.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<f64>,
}

impl Adjacency {
    fn build(n: usize, couplings: &[Coupling]) -> Self {
        let mut degree = vec![0usize; n];
        for c in couplings {
            degree[c.i as usize] += 1;
            degree[c.j as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; acc];
        let mut weights = vec![0.0f64; acc];
        for c in couplings {
            let (i, j) = (c.i as usize, c.j as usize);
            neighbors[cursor[i]] = c.j;
            weights[cursor[i]] = c.value;
            cursor[i] += 1;
            neighbors[cursor[j]] = c.i;
            weights[cursor[j]] = c.value;
            cursor[j] += 1;
        }
        Self {
            offsets,
            neighbors,
            weights,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Neighbors of spin `i` with their coupling values.
    #[inline]
    pub fn row(&self, i: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let lo = self.offsets[i];
        let hi = self.offsets[i + 1];
        self.neighbors[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    /// Raw CSR slices for the hot loop: (offsets, neighbors, weights).
    #[inline]
    pub fn raw(&self) -> (&[usize], &[u32], &[f64]) {
        (&self.offsets, &self.neighbors, &self.weights)
    }
}

/// A spin assignment; every entry is exactly +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SpinConfig(Vec<i8>);

impl SpinConfig {
    pub fn new(spins: Vec<i8>) -> Result<Self, ModelError> {
        for (index, &s) in spins.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(ModelError::InvalidSpin { index, value: s });
            }
        }
        Ok(Self(spins))
    }

    /// All spins set to -1.
    pub fn all_down(n: usize) -> Self {
        Self(vec![-1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    /// The globally flipped configuration.
    pub fn flipped(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }
}

impl TryFrom<Vec<i8>> for SpinConfig {
    type Error = ModelError;
    fn try_from(v: Vec<i8>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<SpinConfig> for Vec<i8> {
    fn from(s: SpinConfig) -> Self {
        s.0
    }
}

/// Sparse symmetric Ising problem: couplings `J`, fields `h`, and metadata.
///
/// Immutable after construction (metadata aside) and safe to share across
/// threads by reference.
#[derive(Debug, Clone)]
pub struct IsingModel {
    n: usize,
    couplings: Vec<Coupling>,
    fields: Vec<f64>,
    adjacency: Adjacency,
    pub metadata: ModelMetadata,
}

impl IsingModel {
    /// Build a model from unordered coupling triples and dense fields.
    ///
    /// Pairs are normalized to `i < j` and sorted; self-couplings,
    /// duplicate pairs, out-of-range indices, and non-finite values are
    /// rejected.
    pub fn new(
        n: usize,
        couplings: Vec<(usize, usize, f64)>,
        fields: Vec<f64>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptyModel);
        }
        if fields.len() != n {
            return Err(ModelError::FieldLength {
                expected: n,
                got: fields.len(),
            });
        }
        for &h in &fields {
            if !h.is_finite() {
                return Err(ModelError::NonFiniteField);
            }
        }
        let mut normalized = Vec::with_capacity(couplings.len());
        for (u, v, value) in couplings {
            if u == v {
                return Err(ModelError::SelfCoupling { index: u });
            }
            if u >= n || v >= n {
                return Err(ModelError::IndexOutOfRange { i: u, j: v, n });
            }
            if !value.is_finite() {
                return Err(ModelError::NonFiniteCoupling { i: u, j: v });
            }
            let (i, j) = if u < v { (u, v) } else { (v, u) };
            normalized.push(Coupling {
                i: i as u32,
                j: j as u32,
                value,
            });
        }
        normalized.sort_by_key(|c| (c.i, c.j));
        for w in normalized.windows(2) {
            if w[0].i == w[1].i && w[0].j == w[1].j {
                return Err(ModelError::DuplicateCoupling {
                    i: w[0].i as usize,
                    j: w[0].j as usize,
                });
            }
        }
        let adjacency = Adjacency::build(n, &normalized);
        Ok(Self {
            n,
            couplings: normalized,
            fields,
            adjacency,
            metadata: ModelMetadata::default(),
        })
    }

    /// Model with the given couplings and all fields zero.
    pub fn from_couplings(
        n: usize,
        couplings: Vec<(usize, usize, f64)>,
    ) -> Result<Self, ModelError> {
        Self::new(n, couplings, vec![0.0; n])
    }

    pub fn with_metadata(mut self, metadata: ModelMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    /// `H(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i`.
    pub fn energy(&self, config: &SpinConfig) -> Result<f64, ModelError> {
        if config.len() != self.n {
            return Err(ModelError::DimensionMismatch {
                expected: self.n,
                got: config.len(),
            });
        }
        Ok(self.energy_of_spins(config.spins()))
    }

    /// Energy of a raw spin slice; callers guarantee length `n` and +/-1
    /// entries.
    pub(crate) fn energy_of_spins(&self, spins: &[i8]) -> f64 {
        let mut pair = 0.0;
        for c in &self.couplings {
            let product = spins[c.i as usize] as i32 * spins[c.j as usize] as i32;
            pair += c.value * f64::from(product);
        }
        let mut field = 0.0;
        for (h, &s) in self.fields.iter().zip(spins) {
            field += h * f64::from(s);
        }
        -pair - field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_spins(n: usize, rng: &mut impl Rng) -> SpinConfig {
        SpinConfig::new((0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
            .unwrap()
    }

    #[test]
    fn aligned_pair_energy() {
        let model = IsingModel::from_couplings(2, vec![(0, 1, 1.0)]).unwrap();
        let s = SpinConfig::new(vec![1, 1]).unwrap();
        assert_eq!(model.energy(&s).unwrap(), -1.0);
        let s = SpinConfig::new(vec![1, -1]).unwrap();
        assert_eq!(model.energy(&s).unwrap(), 1.0);
    }

    #[test]
    fn field_only_energy() {
        let model = IsingModel::new(2, vec![], vec![0.5, -2.0]).unwrap();
        let s = SpinConfig::new(vec![1, 1]).unwrap();
        assert_eq!(model.energy(&s).unwrap(), -0.5 + 2.0);
    }

    #[test]
    fn spin_flip_symmetry_without_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(2..12);
            let mut couplings = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.random::<bool>() {
                        couplings.push((i, j, rng.random_range(-1.0..1.0)));
                    }
                }
            }
            let model = IsingModel::from_couplings(n, couplings).unwrap();
            let s = random_spins(n, &mut rng);
            let e = model.energy(&s).unwrap();
            let e_flipped = model.energy(&s.flipped()).unwrap();
            assert_eq!(e, e_flipped);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let model = IsingModel::from_couplings(3, vec![(0, 1, 1.0)]).unwrap();
        let s = SpinConfig::new(vec![1, -1]).unwrap();
        assert!(matches!(
            model.energy(&s),
            Err(ModelError::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            IsingModel::from_couplings(2, vec![(0, 0, 1.0)]),
            Err(ModelError::SelfCoupling { index: 0 })
        ));
        assert!(matches!(
            IsingModel::from_couplings(2, vec![(0, 3, 1.0)]),
            Err(ModelError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            IsingModel::from_couplings(3, vec![(0, 1, 1.0), (1, 0, 2.0)]),
            Err(ModelError::DuplicateCoupling { i: 0, j: 1 })
        ));
        assert!(matches!(
            IsingModel::from_couplings(2, vec![(0, 1, f64::NAN)]),
            Err(ModelError::NonFiniteCoupling { .. })
        ));
        assert!(matches!(
            IsingModel::new(2, vec![], vec![0.0]),
            Err(ModelError::FieldLength { .. })
        ));
        assert!(matches!(
            IsingModel::from_couplings(0, vec![]),
            Err(ModelError::EmptyModel)
        ));
    }

    #[test]
    fn spin_config_rejects_non_unit_entries() {
        assert!(SpinConfig::new(vec![1, 0, -1]).is_err());
        assert!(SpinConfig::new(vec![1, -1]).is_ok());
    }

    #[test]
    fn adjacency_matches_coupling_list() {
        let model =
            IsingModel::from_couplings(4, vec![(2, 1, 0.5), (0, 3, -1.0), (0, 1, 2.0)]).unwrap();
        let adj = model.adjacency();
        let row1: Vec<(u32, f64)> = adj.row(1).collect();
        assert!(row1.contains(&(0, 2.0)));
        assert!(row1.contains(&(2, 0.5)));
        assert_eq!(row1.len(), 2);
        let row3: Vec<(u32, f64)> = adj.row(3).collect();
        assert_eq!(row3, vec![(0, -1.0)]);
    }
}
