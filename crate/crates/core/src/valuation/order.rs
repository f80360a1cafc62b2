use serde::Serialize;

use crate::ffcore::Vector;
use crate::flagmap::{is_flag_map, HomogeneousMap};
use crate::valuation::{ord, FunctionSpan, GroupValue, ValError, Valuation};

/// The preorder read off a flag map. `rank[i]` grows with the order, so
/// points of higher valuation get larger ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagOrder {
    pub rank: Vec<usize>,
    /// Equivalence classes, lowest first, each ascending.
    pub classes: Vec<Vec<usize>>,
    /// Pairs breaking totality, antisymmetry or transitivity.
    pub violations: Vec<(usize, usize)>,
    /// Pairs (i, j) with i > j whose translates by a common factor reverse.
    pub product_violations: Vec<(usize, usize)>,
}

impl FlagOrder {
    /// Strict comparison of two points.
    pub fn greater(&self, i: usize, j: usize) -> bool {
        self.rank[i] > self.rank[j]
    }
}

fn vec_add(f: &crate::ffcore::Gf, a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// For unequal values a(f) != a(f'), a(f + f') = a(f) puts f' above f;
/// equal values are separated only through an intermediate point of a
/// different value.
pub fn order_from_flagmap(
    alpha: &HomogeneousMap,
    mult: Option<&dyn Fn(&[u32], &[u32]) -> Option<Vector>>,
) -> Result<FlagOrder, ValError> {
    if !is_flag_map(alpha) {
        return Err(ValError::NotFlag);
    }
    let d = alpha.domain();
    let f = d.space().field().clone();
    let n = d.len();
    let mut gt = vec![vec![false; n]; n];
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if alpha.at(i) == alpha.at(j) {
                continue;
            }
            let s = alpha.value(&vec_add(&f, d.point(i), d.point(j))).expect("distinct points");
            if s == alpha.at(i) {
                gt[j][i] = true;
            } else if s == alpha.at(j) {
                gt[i][j] = true;
            } else {
                violations.push((i, j));
            }
        }
    }
    let strict = gt.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && alpha.at(i) == alpha.at(j) {
                gt[i][j] = (0..n).any(|k| alpha.at(k) != alpha.at(i) && strict[i][k] && strict[k][j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if gt[i][j] && gt[j][i] && i < j {
                violations.push((i, j));
            }
            for k in 0..n {
                let eq_ij = !gt[i][j] && !gt[j][i];
                let eq_jk = !gt[j][k] && !gt[k][j];
                let eq_ik = !gt[i][k] && !gt[k][i];
                let broken = (gt[i][j] && gt[j][k] && !gt[i][k])
                    || (eq_ij && eq_jk && i != k && !eq_ik)
                    || (eq_ij && gt[j][k] && !gt[i][k]);
                if broken {
                    violations.push((i, k));
                }
            }
        }
    }
    violations.sort_unstable();
    violations.dedup();

    let below: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| gt[i][j]).count()).collect();
    let mut levels = below.clone();
    levels.sort_unstable();
    levels.dedup();
    let rank: Vec<usize> = below.iter().map(|b| levels.binary_search(b).expect("present")).collect();
    let mut classes = vec![Vec::new(); levels.len()];
    for (i, &r) in rank.iter().enumerate() {
        classes[r].push(i);
    }

    let mut product_violations = Vec::new();
    if let Some(mult) = mult {
        for k in 0..n {
            let prods: Vec<Option<usize>> =
                (0..n).map(|i| mult(d.point(i), d.point(k)).and_then(|v| d.index().of(&v))).collect();
            for i in 0..n {
                for j in 0..n {
                    if let (true, Some(a), Some(b)) = (rank[i] > rank[j], prods[i], prods[j]) {
                        if rank[a] <= rank[b] {
                            product_violations.push((i, j));
                        }
                    }
                }
            }
        }
        product_violations.sort_unstable();
        product_violations.dedup();
    }
    Ok(FlagOrder { rank, classes, violations, product_violations })
}

/// mu(1 + m) = mu(1) for every m in the span with positive valuation.
pub fn decomposition_respects(
    mu: &HomogeneousMap,
    v: &Valuation,
    span: &FunctionSpan,
) -> Result<bool, ValError> {
    let d = mu.domain();
    let f = d.space().field().clone();
    let unit = d
        .index()
        .points()
        .iter()
        .find(|p| span.element(&p.0).is_constant())
        .ok_or(ValError::NoUnit)?
        .0
        .clone();
    let base = mu.value(&unit).expect("nonzero");
    let rank = v.rank();
    let zero = GroupValue(vec![0; rank]);
    for p in d.index().points() {
        if ord(v, &span.element(&p.0))? <= zero {
            continue;
        }
        for k in 1..f.q() {
            let w: Vector = unit.iter().zip(&p.0).map(|(&a, &b)| f.add(a, f.mul(k, b))).collect();
            if mu.value(&w) != Some(base) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
