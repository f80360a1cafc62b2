use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{inertia_generator, kummer_pairing, support_size, CurveError, CurveGaloisElem};
use crate::ffcore::Gf;
use crate::lattice::solve_mod;
use crate::poly::{monic_irreducibles, ClosedPoint, RatFunc, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CuCase {
    /// 2s + 2 points with pairwise distinct values.
    Distinct,
    /// s + 1 points on the majority value b and s + 1 points off it.
    Shared,
}

#[derive(Clone, Debug)]
pub struct CuSeparator {
    pub case: CuCase,
    pub points: Vec<ClosedPoint>,
    /// Index in `points` of the base point q_0 used for the divisor basis.
    pub base: usize,
    /// f_j with div f_j = deg(q_0) q_j - deg(q_j) q_0, one per j != base.
    pub functions: Vec<RatFunc>,
    pub psi_iota: Vec<i64>,
    /// psi(delta_w) for every w in `points`; zero for points outside.
    pub psi_delta: Vec<Vec<i64>>,
    pub subsets_checked: usize,
}

/// Points outside `avoid`, in the order infinity, rational, then by degree.
fn fresh_points(f: &Gf, avoid: &BTreeSet<ClosedPoint>, count: usize) -> Vec<ClosedPoint> {
    let mut out = Vec::new();
    let push = |p: ClosedPoint, out: &mut Vec<ClosedPoint>| {
        if out.len() < count && !avoid.contains(&p) {
            out.push(p);
        }
    };
    push(ClosedPoint::Infinity, &mut out);
    for a in f.elements() {
        push(ClosedPoint::rational(f, a), &mut out);
    }
    let mut d = 2;
    while out.len() < count {
        for p in monic_irreducibles(f, d) {
            push(ClosedPoint::Finite(p), &mut out);
        }
        d += 1;
    }
    out
}

fn uniformizer(f: &Gf, p: &ClosedPoint) -> UPoly {
    match p {
        ClosedPoint::Finite(u) => u.clone(),
        ClosedPoint::Infinity => UPoly::one(f),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Finite set Q and functions supported on Q whose pairing vector psi keeps
/// iota outside the span of any s inertia generators.
pub fn cu_separator(iota: &CurveGaloisElem, s: usize) -> Result<CuSeparator, CurveError> {
    let sup = support_size(iota);
    if sup <= s {
        return Err(CurveError::SupportTooSmall { support: sup, s });
    }
    let f = iota.field().clone();
    let (ell, m) = iota.level();
    let exc: Vec<(ClosedPoint, i64)> = iota.exceptions().map(|(p, v)| (p.clone(), v)).collect();
    let taken: BTreeSet<ClosedPoint> = exc.iter().map(|e| e.0.clone()).collect();
    let values: BTreeSet<i64> = exc.iter().map(|e| e.1).collect();

    let (case, points) = if values.len() + 1 >= 2 * s + 2 {
        let mut pts = fresh_points(&f, &taken, 1);
        for v in values.iter().take(2 * s + 1) {
            pts.push(exc.iter().find(|e| e.1 == *v).expect("value present").0.clone());
        }
        (CuCase::Distinct, pts)
    } else {
        let mut pts = fresh_points(&f, &taken, s + 1);
        pts.extend(exc.iter().take(s + 1).map(|e| e.0.clone()));
        (CuCase::Shared, pts)
    };

    let base = (0..points.len()).min_by_key(|&i| (points[i].degree(), i)).expect("nonempty");
    let d0 = points[base].degree() as u64;
    let pi0 = uniformizer(&f, &points[base]);
    let functions: Vec<RatFunc> = (0..points.len())
        .filter(|&j| j != base)
        .map(|j| {
            let pj = uniformizer(&f, &points[j]);
            RatFunc::new(pj.pow(d0), pi0.pow(points[j].degree() as u64))
        })
        .collect();
    let psi = |mu: &CurveGaloisElem| -> Result<Vec<i64>, CurveError> {
        functions.iter().map(|g| kummer_pairing(mu, g)).collect()
    };
    let psi_iota = psi(iota)?;
    let psi_delta = points
        .iter()
        .map(|p| psi(&inertia_generator(&f, ell, m, p)?))
        .collect::<Result<Vec<_>, _>>()?;
    let mut sep = CuSeparator { case, points, base, functions, psi_iota, psi_delta, subsets_checked: 0 };
    sep.subsets_checked = verify_separation(&sep, s, iota.modulus())?;
    Ok(sep)
}

/// Exhaustive check over s-subsets of Q; generators outside Q map to zero,
/// so these subsets cover every choice of s inertia groups.
pub fn verify_separation(sep: &CuSeparator, s: usize, modulus: i64) -> Result<usize, CurveError> {
    let rows = sep.psi_iota.len();
    let all = subsets(sep.points.len(), s.min(sep.points.len()));
    let n = modulus as i128;
    let bad: Vec<Option<Vec<usize>>> = all
        .par_iter()
        .map(|sub| {
            if sub.is_empty() {
                return sep.psi_iota.iter().all(|&v| v == 0).then(Vec::new);
            }
            let a: Vec<Vec<i128>> = (0..rows)
                .map(|r| sub.iter().map(|&w| sep.psi_delta[w][r] as i128).collect())
                .collect();
            let b: Vec<i128> = sep.psi_iota.iter().map(|&v| v as i128).collect();
            solve_mod(&a, &b, sub.len(), n).map(|_| sub.clone())
        })
        .collect();
    match bad.into_iter().flatten().next() {
        Some(sub) => Err(CurveError::NotSeparating(sub)),
        None => Ok(all.len()),
    }
}
