use rayon::prelude::*;
use serde::Serialize;

use crate::ffcore::{combine, enumerate_proj_points, nullspace, span, Gf, Subspace, VecSpace, Vector};
use crate::flagmap::{FlagError, HomogeneousMap, Ring};

/// Largest value set accepted by [`h_reduction_holds`].
pub const H_REDUCTION_MAX_VALUES: usize = 16;

/// A complete flag B = B_0 > B_1 > ... > B_n = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub chain: Vec<Subspace>,
}

impl Flag {
    /// Strictly decreasing, one dimension per step, ending at zero.
    pub fn is_complete(&self, f: &Gf) -> bool {
        let Some(last) = self.chain.last() else { return false };
        last.dim() == 0
            && self.chain.windows(2).all(|w| w[1].dim() + 1 == w[0].dim() && w[1].is_subspace_of(f, &w[0]))
    }
}

/// Outcome of a logarithmic check on the in-span products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogReport {
    pub holds: bool,
    pub tested: usize,
    pub skipped: usize,
    /// First failing pair of point indices.
    pub violation: Option<(usize, usize)>,
}

/// Check mu(a a') = mu(a) + mu(a') on every unordered pair of points whose
/// product lands in the domain. `mult` returns the coordinates of the
/// product, or `None` when it leaves the space.
pub fn is_logarithmic(
    mu: &HomogeneousMap,
    mult: impl Fn(&[u32], &[u32]) -> Option<Vector>,
) -> LogReport {
    let d = mu.domain();
    let mut rep = LogReport { holds: true, tested: 0, skipped: 0, violation: None };
    for i in 0..d.len() {
        for j in i..d.len() {
            let Some(prod) = mult(d.point(i), d.point(j)) else {
                rep.skipped += 1;
                continue;
            };
            let Some(k) = d.index().of(&prod) else {
                rep.skipped += 1;
                continue;
            };
            rep.tested += 1;
            if mu.ring().reduce(mu.at(i) + mu.at(j)) != mu.at(k) && rep.violation.is_none() {
                rep.holds = false;
                rep.violation = Some((i, j));
            }
        }
    }
    rep
}

fn constant_but_one(values: impl Iterator<Item = i64> + Clone) -> bool {
    let mut it = values.clone();
    let Some(a) = it.next() else { return true };
    let Some(b) = it.find(|&v| v != a) else { return true };
    // some value other than the first exists: a or b must be the majority
    let count_a = values.clone().filter(|&v| v == a).count();
    let count_b = values.clone().filter(|&v| v == b).count();
    let total = values.count();
    count_a + 1 == total || count_b + 1 == total
}

fn on_points(mu: &HomogeneousMap, pts: &[usize]) -> bool {
    constant_but_one(pts.iter().map(|&i| mu.at(i)))
}

/// For a 2-dim subspace: constant on P(B) except at most one point.
pub fn is_flag_dim2(mu: &HomogeneousMap, b: &Subspace) -> Result<bool, FlagError> {
    if b.dim() != 2 {
        return Err(FlagError::NotAPlane(b.dim()));
    }
    Ok(on_points(mu, &mu.domain().index().points_of(b)))
}

/// Flag property on every line of the domain.
pub fn is_flag_map(mu: &HomogeneousMap) -> bool {
    mu.domain().lines().par_iter().all(|l| on_points(mu, &l.points))
}

/// The first line (in echelon order) where the flag property fails.
pub fn first_non_flag_line(mu: &HomogeneousMap) -> Option<Subspace> {
    mu.domain().lines().iter().find(|l| !on_points(mu, &l.points)).map(|l| l.subspace.clone())
}

/// Hyperplanes of `s`, sorted by echelon basis.
pub fn hyperplanes(f: &Gf, s: &Subspace) -> Vec<Subspace> {
    let k = s.dim();
    let n = s.ambient_dim();
    if k == 0 {
        return Vec::new();
    }
    let functionals = enumerate_proj_points(&VecSpace::new(f.clone(), k).expect("k >= 1"));
    let mut out: Vec<Subspace> = functionals
        .iter()
        .map(|w| {
            let coeffs = nullspace(f, std::slice::from_ref(&w.0), k);
            let vecs: Vec<Vector> = coeffs.iter().map(|c| combine(f, c, s.basis(), n)).collect();
            span(f, &vecs, n)
        })
        .collect();
    out.sort_by_key(|h| h.flat());
    out
}

fn descend(mu: &HomogeneousMap, s: &Subspace, chain: &mut Vec<Subspace>) -> bool {
    if s.dim() == 0 {
        return true;
    }
    let f = mu.domain().space().field().clone();
    let pts = mu.domain().index().points_of(s);
    for h in hyperplanes(&f, s) {
        let outside = pts.iter().filter(|&&i| !h.contains(&f, mu.domain().point(i)));
        let mut vals = outside.map(|&i| mu.at(i));
        let first = vals.next();
        if vals.all(|v| Some(v) == first) {
            chain.push(h.clone());
            if descend(mu, &h, chain) {
                return true;
            }
            chain.pop();
        }
    }
    false
}

/// A complete flag of `b` with mu constant on each B_i minus B_{i+1}.
/// At each level the least qualifying hyperplane is tried first.
pub fn find_flag(mu: &HomogeneousMap, b: &Subspace) -> Option<Flag> {
    let mut chain = vec![b.clone()];
    descend(mu, b, &mut chain).then_some(Flag { chain })
}

/// Every reduction h: values -> Z/2 gives a flag map.
pub fn h_reduction_holds(mu: &HomogeneousMap) -> Result<bool, FlagError> {
    let vals = mu.value_set();
    if vals.len() > H_REDUCTION_MAX_VALUES {
        return Err(FlagError::TooManyValues(vals.len()));
    }
    let two = Ring::Zl { ell: 2, m: 1 };
    let k = vals.len() as u32;
    let holds = (0u32..(1 << k)).into_par_iter().all(|mask| {
        let h = mu.map_values(two, |v| {
            let pos = vals.binary_search(&v).expect("value in set");
            ((mask >> pos) & 1) as i64
        });
        is_flag_map(&h)
    });
    Ok(holds)
}

/// A basis (c, b) of the plane with mu(c) = mu(c + k b) != mu(b) for all
/// scalars k, taking the least point b first.
pub fn functional_equation_flag(
    mu: &HomogeneousMap,
    c: &Subspace,
) -> Result<Option<(Vector, Vector)>, FlagError> {
    if c.dim() != 2 {
        return Err(FlagError::NotAPlane(c.dim()));
    }
    let d = mu.domain();
    let f = d.space().field().clone();
    let pts = d.index().points_of(c);
    for &bi in &pts {
        let b = d.point(bi);
        let Some(&ci) = pts.iter().find(|&&i| i != bi) else { continue };
        let cv = d.point(ci);
        let target = mu.at(ci);
        if target == mu.at(bi) {
            continue;
        }
        let ok = f.elements().all(|k| {
            let v: Vector = cv.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(k, y))).collect();
            mu.value(&v) == Some(target)
        });
        if ok {
            return Ok(Some((cv.clone(), b.clone())));
        }
    }
    Ok(None)
}
