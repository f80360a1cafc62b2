use std::collections::BTreeMap;

use super::{supp_x, LadicError, LadicFunction};
use crate::ffcore::nullspace;
use crate::poly::{factor2, BPoly, RatFunc, RatFunc2, UPoly};
use crate::valuation::residues_vanish_all;

/// Some phi with h = phi(x), if h lies in k(x).
pub fn express_in(h: &RatFunc2, x: &RatFunc2) -> Option<RatFunc> {
    let f = h.field().clone();
    if x.is_constant() {
        return None;
    }
    if h.is_constant() {
        return Some(RatFunc::constant(&f, h.num().constant_value()?));
    }
    let (p, q) = (h.num(), h.den());
    let (a, b) = (x.num(), x.den());
    let top = p.total_deg().max(q.total_deg()) as usize;
    for d in 1..=top {
        // columns: alpha_0..alpha_d, beta_0..beta_d in
        // P * beta(A, B) - Q * alpha(A, B) = 0
        let mut cols: Vec<BPoly> = Vec::with_capacity(2 * d + 2);
        let basis: Vec<BPoly> = (0..=d).map(|i| a.pow(i as u64).mul(&b.pow((d - i) as u64))).collect();
        for m in &basis {
            cols.push(q.mul(m).neg());
        }
        for m in &basis {
            cols.push(p.mul(m));
        }
        let mut rows: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for (j, c) in cols.iter().enumerate() {
            for (i, k, v) in c.terms() {
                rows.entry((i, k)).or_insert_with(|| vec![0; cols.len()])[j] = v;
            }
        }
        let rows: Vec<Vec<u32>> = rows.into_values().collect();
        if let Some(sol) = nullspace(&f, &rows, cols.len()).into_iter().next() {
            let alpha = UPoly::new(&f, sol[..=d].to_vec());
            let beta = UPoly::new(&f, sol[d + 1..].to_vec());
            if beta.is_zero() {
                continue;
            }
            return Some(RatFunc::new(alpha, beta));
        }
    }
    None
}

/// Fibre equations P - cQ of h over the rational values c, then Q.
fn fibres(h: &RatFunc2) -> Vec<BPoly> {
    let f = h.field();
    let mut out: Vec<BPoly> = f.elements().map(|c| h.num().sub(&h.den().scale(c))).collect();
    out.push(h.den().clone());
    out.retain(|p| p.total_deg() >= 1);
    out
}

fn degree(h: &RatFunc2) -> i64 {
    h.num().total_deg().max(h.den().total_deg())
}

/// Generator candidates for the subfield containing `base`: base itself,
/// irreducible fibre components, and ratios of equal-degree components from
/// distinct fibres, smallest first.
fn candidates(base: &RatFunc2) -> Vec<RatFunc2> {
    let mut comps: Vec<Vec<BPoly>> = Vec::new();
    for fib in fibres(base) {
        if let Ok(fs) = factor2(&fib) {
            comps.push(fs.into_iter().map(|(p, _)| p).collect());
        }
    }
    let mut out = vec![base.clone()];
    for fib in &comps {
        for p in fib {
            out.push(RatFunc2::poly(p.clone()));
        }
    }
    for (i, f1) in comps.iter().enumerate() {
        for f2 in &comps[i + 1..] {
            for p in f1 {
                for q in f2 {
                    if p.total_deg() == q.total_deg() && p != q {
                        out.push(RatFunc2::new(p.clone(), q.clone()));
                    }
                }
            }
        }
    }
    out.sort_by_key(degree);
    out.dedup();
    out
}

/// A rational function x with every input in k(x), found among candidates
/// built from the lowest-degree input.
pub fn common_generator(funcs: &[RatFunc2]) -> Option<(RatFunc2, Vec<RatFunc>)> {
    let nonconst: Vec<&RatFunc2> = funcs.iter().filter(|h| !h.is_constant()).collect();
    let base = nonconst.iter().min_by_key(|h| (degree(h), h.render()))?;
    for x in candidates(base) {
        let phis: Option<Vec<RatFunc>> = funcs.iter().map(|h| express_in(h, &x)).collect();
        if let Some(phis) = phis {
            return Some((x, phis));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GffResult {
    pub generator: RatFunc2,
    /// phi_i with component_i = phi_i(generator), f components first.
    pub expressions: Vec<RatFunc>,
    /// Whether the two supports are disjoint (reported, not required).
    pub disjoint_supports: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GffFailure {
    /// Components i and j (indices into f parts then g parts) have a
    /// nontrivial residue along `curve`.
    Residue { i: usize, j: usize, curve: String, residue: String },
    NoGenerator,
    Empty,
}

/// Common one-variable subfield of two commuting truncated l-adic functions.
pub fn gff_subfield(f: &LadicFunction, g: &LadicFunction) -> Result<Result<GffResult, GffFailure>, LadicError> {
    let sf = supp_x(f)?;
    let sg = supp_x(g)?;
    let disjoint = sf.iter().all(|c| !sg.contains(c));
    let comps: Vec<RatFunc2> = f.components().into_iter().chain(g.components()).map(|c| c.0).collect();
    if comps.is_empty() {
        return Ok(Err(GffFailure::Empty));
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let sweep = residues_vanish_all(&comps[i], &comps[j])?;
            if let Some((curve, residue)) = sweep.witness {
                return Ok(Err(GffFailure::Residue { i, j, curve, residue }));
            }
        }
    }
    Ok(match common_generator(&comps) {
        Some((generator, expressions)) => Ok(GffResult { generator, expressions, disjoint_supports: disjoint }),
        None => Err(GffFailure::NoGenerator),
    })
}
