use rayon::prelude::*;
use serde::Serialize;

use crate::ffcore::Subspace;
use crate::flagmap::{is_flag_map, FlagError, HomogeneousMap, Ring};
use crate::lattice::{ell_valuation, integer_kernel, kernel_mod};

/// Constants with s mu + s' mu' = s'' on every point of a plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CPairWitness {
    pub plane: Subspace,
    pub s: i64,
    pub s1: i64,
    pub s2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CPairReport {
    pub holds: bool,
    /// One witness per plane that admits one, in line order.
    pub witnesses: Vec<CPairWitness>,
    /// Planes without a witness, in line order.
    pub failing: Vec<Subspace>,
}

fn check_pair(mu: &HomogeneousMap, mu2: &HomogeneousMap) -> Result<(), FlagError> {
    if !mu.same_domain(mu2) {
        return Err(FlagError::DomainMismatch);
    }
    if mu.ring() != mu2.ring() {
        return Err(FlagError::RingMismatch);
    }
    Ok(())
}

fn plane_witness(mu: &HomogeneousMap, mu2: &HomogeneousMap, pts: &[usize]) -> Option<(i64, i64, i64)> {
    let rows: Vec<Vec<i128>> =
        pts.iter().map(|&i| vec![mu.at(i) as i128, mu2.at(i) as i128, -1]).collect();
    match mu.ring() {
        Ring::Z => {
            let ker = integer_kernel(&rows, 3);
            ker.into_iter()
                .find(|k| k[0] != 0 || k[1] != 0)
                .map(|k| (k[0] as i64, k[1] as i64, k[2] as i64))
        }
        Ring::Zl { ell, m } => {
            let n = (ell as i128).pow(m);
            // prefer the generator whose (s, s') has the smallest l-adic valuation
            kernel_mod(&rows, 3, n)
                .into_iter()
                .filter(|k| k[0] % n != 0 || k[1] % n != 0)
                .min_by_key(|k| {
                    ell_valuation(k[0], ell as i128, m).min(ell_valuation(k[1], ell as i128, m))
                })
                .map(|k| (k[0] as i64, k[1] as i64, k[2] as i64))
        }
    }
}

/// Solve for (s, s', s'') on every plane; kernels over Z/l^m go through the
/// Smith form.
pub fn is_c_pair(mu: &HomogeneousMap, mu2: &HomogeneousMap) -> Result<CPairReport, FlagError> {
    check_pair(mu, mu2)?;
    let lines = mu.domain().lines();
    let found: Vec<Option<(i64, i64, i64)>> =
        lines.par_iter().map(|l| plane_witness(mu, mu2, &l.points)).collect();
    let mut rep = CPairReport { holds: true, witnesses: Vec::new(), failing: Vec::new() };
    for (l, w) in lines.iter().zip(found) {
        match w {
            Some((s, s1, s2)) => {
                rep.witnesses.push(CPairWitness { plane: l.subspace.clone(), s, s1, s2 })
            }
            None => {
                rep.holds = false;
                rep.failing.push(l.subspace.clone());
            }
        }
    }
    Ok(rep)
}

/// Representatives of P^1(Z/l^m) in scan order: (1 : c') for c' = 0..l^m-1,
/// then (l c : 1) for c = 0..l^(m-1)-1.
pub fn projective_line_mod(ell: u32, m: u32) -> Vec<(i64, i64)> {
    let n = (ell as i64).pow(m);
    let mut out: Vec<(i64, i64)> = (0..n).map(|c| (1, c)).collect();
    out.extend((0..n / ell as i64).map(|c| (ell as i64 * c, 1)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComboOutcome {
    pub witness: Option<(i64, i64)>,
    /// Planes failing the c-pair test, filled only when no witness exists.
    pub certificate: Vec<Subspace>,
}

/// First (c : c') in [`projective_line_mod`] order with c mu + c' mu' a flag map.
pub fn find_flag_combination(
    mu: &HomogeneousMap,
    mu2: &HomogeneousMap,
) -> Result<ComboOutcome, FlagError> {
    check_pair(mu, mu2)?;
    let Ring::Zl { ell, m } = mu.ring() else { return Err(FlagError::NeedsTruncatedRing) };
    let witness = projective_line_mod(ell, m)
        .into_iter()
        .find(|&(c, c2)| is_flag_map(&mu.combination(c, mu2, c2)));
    let certificate = match witness {
        Some(_) => Vec::new(),
        None => is_c_pair(mu, mu2)?.failing,
    };
    Ok(ComboOutcome { witness, certificate })
}

/// Maximal sets of maps that are pairwise c-pairs, each sorted, listed in
/// lexicographic order.
pub fn maximal_cpair_cliques(maps: &[HomogeneousMap]) -> Result<Vec<Vec<usize>>, FlagError> {
    let n = maps.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let edges: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| is_c_pair(&maps[i], &maps[j]).map(|r| r.holds))
        .collect::<Result<_, _>>()?;
    let mut adj = vec![vec![false; n]; n];
    for (&(i, j), &e) in pairs.iter().zip(&edges) {
        adj[i][j] = e;
        adj[j][i] = e;
    }
    let mut out = Vec::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    while let Some(&v) = p.first() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
        let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(0);
        x.push(v);
    }
}
