use std::collections::HashMap;
use std::sync::Arc;

use crate::ffcore::{Gf, VecSpace, Vector};
use crate::flagmap::{Domain, HomogeneousMap, Ring};
use crate::poly::{RatFunc, RatFunc2};
use crate::valuation::{ord, GroupValue, ValError, Valuation};

/// An element of k(t) or of k(x, y).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    T(RatFunc),
    XY(RatFunc2),
}

impl Func {
    pub fn field(&self) -> &Gf {
        match self {
            Func::T(r) => r.field(),
            Func::XY(r) => r.field(),
        }
    }
    pub fn is_zero(&self) -> bool {
        match self {
            Func::T(r) => r.is_zero(),
            Func::XY(r) => r.is_zero(),
        }
    }
    pub fn is_constant(&self) -> bool {
        match self {
            Func::T(r) => r.is_constant(),
            Func::XY(r) => r.is_constant(),
        }
    }
    pub fn zero_like(&self) -> Func {
        match self {
            Func::T(r) => Func::T(RatFunc::constant(r.field(), 0)),
            Func::XY(r) => Func::XY(RatFunc2::constant(r.field(), 0)),
        }
    }
    pub fn add(&self, o: &Func) -> Result<Func, ValError> {
        match (self, o) {
            (Func::T(a), Func::T(b)) => Ok(Func::T(a.add(b))),
            (Func::XY(a), Func::XY(b)) => Ok(Func::XY(a.add(b))),
            _ => Err(ValError::MixedFields),
        }
    }
    pub fn mul(&self, o: &Func) -> Result<Func, ValError> {
        match (self, o) {
            (Func::T(a), Func::T(b)) => Ok(Func::T(a.mul(b))),
            (Func::XY(a), Func::XY(b)) => Ok(Func::XY(a.mul(b))),
            _ => Err(ValError::MixedFields),
        }
    }
    pub fn scale(&self, c: u32) -> Func {
        match self {
            Func::T(r) => Func::T(r.scale(c)),
            Func::XY(r) => Func::XY(r.scale(c)),
        }
    }
    pub fn render(&self) -> String {
        match self {
            Func::T(r) => r.render("t"),
            Func::XY(r) => r.render(),
        }
    }
}

/// A finite F_p-subspace of a function field, given by independent generators.
#[derive(Clone, Debug)]
pub struct FunctionSpan {
    prime: Gf,
    basis: Vec<Func>,
    domain: Arc<Domain>,
    lookup: HashMap<Func, Vector>,
}

impl FunctionSpan {
    /// The F_p-span of `basis`; fails if the generators are dependent or mixed.
    pub fn new(basis: Vec<Func>) -> Result<FunctionSpan, ValError> {
        let first = basis.first().ok_or(ValError::EmptySpan)?;
        let prime = Gf::prime(first.field().p()).expect("characteristic is prime");
        let space = VecSpace::new(prime.clone(), basis.len()).expect("nonempty");
        let mut lookup = HashMap::new();
        for v in space.vectors() {
            let mut acc = first.zero_like();
            for (c, b) in v.iter().zip(&basis) {
                if *c != 0 {
                    acc = acc.add(&b.scale(*c))?;
                }
            }
            if acc.is_zero() && v.iter().any(|&c| c != 0) {
                return Err(ValError::DependentSpan);
            }
            lookup.insert(acc, v);
        }
        Ok(FunctionSpan { prime, domain: Domain::new(&space), basis, lookup })
    }
    pub fn basis(&self) -> &[Func] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn prime_field(&self) -> &Gf {
        &self.prime
    }
    pub fn domain(&self) -> &Arc<Domain> {
        &self.domain
    }
    pub fn element(&self, coords: &[u32]) -> Func {
        let mut acc = self.basis[0].zero_like();
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c)).expect("uniform span");
            }
        }
        acc
    }
    /// Coordinates of a function lying in the span.
    pub fn coords_of(&self, f: &Func) -> Option<Vector> {
        self.lookup.get(f).cloned()
    }
    /// The multiplication law restricted to products that stay in the span.
    pub fn product(&self, a: &[u32], b: &[u32]) -> Option<Vector> {
        let p = self.element(a).mul(&self.element(b)).ok()?;
        self.coords_of(&p)
    }
    /// Valuation of every projective point, in domain order.
    pub fn values(&self, v: &Valuation) -> Result<Vec<GroupValue>, ValError> {
        self.domain.index().points().iter().map(|p| ord(v, &self.element(&p.0))).collect()
    }
    /// One map per component of the value group, reduced into `ring`.
    pub fn component_maps(&self, v: &Valuation, ring: Ring) -> Result<Vec<HomogeneousMap>, ValError> {
        let vals = self.values(v)?;
        Ok((0..v.rank())
            .map(|k| {
                let table = vals.iter().map(|g| g.0[k]).collect();
                HomogeneousMap::new(self.domain.clone(), ring, table).expect("sized to domain")
            })
            .collect())
    }
    /// The map b -> sum_k w_k nu_k(b), reduced into `ring`.
    pub fn weighted_map(&self, v: &Valuation, ring: Ring, w: &[i64]) -> Result<HomogeneousMap, ValError> {
        let vals = self.values(v)?;
        let table = vals.iter().map(|g| g.0.iter().zip(w).map(|(a, b)| a * b).sum()).collect();
        Ok(HomogeneousMap::new(self.domain.clone(), ring, table).expect("sized to domain"))
    }
}
