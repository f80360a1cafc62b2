use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::ffcore::{enumerate_subspaces, PointIndex, Subspace, VecSpace, Vector};
use crate::flagmap::FlagError;

/// Coefficient ring of a homogeneous map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Zl { ell: u32, m: u32 },
}

impl Ring {
    /// l^m for truncated rings.
    pub fn modulus(&self) -> Option<i64> {
        match *self {
            Ring::Z => None,
            Ring::Zl { ell, m } => Some((ell as i64).pow(m)),
        }
    }
    pub fn reduce(&self, v: i64) -> i64 {
        match self.modulus() {
            None => v,
            Some(n) => v.rem_euclid(n),
        }
    }
}

/// A projective line of the domain: a 2-dim subspace and its point indices.
#[derive(Clone, Debug)]
pub struct Line {
    pub subspace: Subspace,
    pub points: Vec<usize>,
}

/// The projectivization of a coordinate space, with its lines cached.
#[derive(Debug)]
pub struct Domain {
    index: PointIndex,
    lines: OnceLock<Vec<Line>>,
}

impl Domain {
    pub fn new(space: &VecSpace) -> Arc<Domain> {
        Arc::new(Domain { index: PointIndex::new(space), lines: OnceLock::new() })
    }
    pub fn space(&self) -> &VecSpace {
        self.index.space()
    }
    pub fn index(&self) -> &PointIndex {
        &self.index
    }
    pub fn len(&self) -> usize {
        self.index.len()
    }
    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
    pub fn point(&self, i: usize) -> &Vector {
        &self.index.points()[i].0
    }
    /// All lines, in the order of their echelon bases.
    pub fn lines(&self) -> &[Line] {
        self.lines.get_or_init(|| {
            enumerate_subspaces(self.space(), 2)
                .into_iter()
                .map(|s| {
                    let points = self.index.points_of(&s);
                    Line { subspace: s, points }
                })
                .collect()
        })
    }
}

/// A map on P(A) with values in Z or Z/l^m, stored per projective point.
#[derive(Clone, Debug)]
pub struct HomogeneousMap {
    domain: Arc<Domain>,
    ring: Ring,
    values: Vec<i64>,
}

impl PartialEq for HomogeneousMap {
    fn eq(&self, o: &Self) -> bool {
        self.ring == o.ring && self.values == o.values && self.domain.space() == o.domain.space()
    }
}

impl HomogeneousMap {
    /// Values indexed by the domain's point order; reduced into the ring.
    pub fn new(domain: Arc<Domain>, ring: Ring, values: Vec<i64>) -> Result<Self, FlagError> {
        if values.len() != domain.len() {
            return Err(FlagError::TableSize { want: domain.len(), got: values.len() });
        }
        let values = values.into_iter().map(|v| ring.reduce(v)).collect();
        Ok(HomogeneousMap { domain, ring, values })
    }
    /// Tabulate `f` on the normalized representative of every point.
    pub fn from_fn(domain: Arc<Domain>, ring: Ring, mut f: impl FnMut(&[u32]) -> i64) -> Self {
        let values = domain.index.points().iter().map(|p| ring.reduce(f(&p.0))).collect();
        HomogeneousMap { domain, ring, values }
    }
    /// Build from explicit (coordinates, value) pairs covering every point once.
    pub fn from_table(
        domain: Arc<Domain>,
        ring: Ring,
        table: &[(Vector, i64)],
    ) -> Result<Self, FlagError> {
        let mut values: Vec<Option<i64>> = vec![None; domain.len()];
        for (v, val) in table {
            let i = domain.index.of(v).ok_or(FlagError::ZeroVector)?;
            match values[i] {
                Some(old) if old != ring.reduce(*val) => {
                    return Err(FlagError::Inhomogeneous(domain.point(i).clone()))
                }
                _ => values[i] = Some(ring.reduce(*val)),
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| FlagError::Missing(domain.point(i).clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomogeneousMap { domain, ring, values })
    }
    pub fn table(&self) -> Vec<(Vector, i64)> {
        self.values.iter().enumerate().map(|(i, &v)| (self.domain.point(i).clone(), v)).collect()
    }

    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }
    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn values(&self) -> &[i64] {
        &self.values
    }
    pub fn at(&self, i: usize) -> i64 {
        self.values[i]
    }
    /// Value at a nonzero vector.
    pub fn value(&self, v: &[u32]) -> Option<i64> {
        self.domain.index.of(v).map(|i| self.values[i])
    }
    /// Distinct values, ascending.
    pub fn value_set(&self) -> Vec<i64> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn map_values(&self, ring: Ring, f: impl Fn(i64) -> i64) -> HomogeneousMap {
        let values = self.values.iter().map(|&v| ring.reduce(f(v))).collect();
        HomogeneousMap { domain: self.domain.clone(), ring, values }
    }
    /// c * self + c2 * other in the common ring.
    pub fn combination(&self, c: i64, other: &HomogeneousMap, c2: i64) -> HomogeneousMap {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| self.ring.reduce(c * a + c2 * b))
            .collect();
        HomogeneousMap { domain: self.domain.clone(), ring: self.ring, values }
    }
    pub fn same_domain(&self, o: &HomogeneousMap) -> bool {
        Arc::ptr_eq(&self.domain, &o.domain) || self.domain.space() == o.domain.space()
    }
}
