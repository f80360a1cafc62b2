//! Finite incidence structures: the projective axioms, joins and spans,
//! Pappus checking, coordinatization of Pappian planes, partial structures
//! with multiplicative translations, and generating elements of GF(q)(t).

mod build;
mod coord;
mod generating;
mod pappus;
mod partial;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{extension_structure, fano, hall_plane9, hall_quasifield9, pg, translation_plane};
pub use coord::{
    coordinatize, coordinatize_plane, rebuild, rebuild_plane, CoordField, Coordinatization,
};
pub use generating::{
    decompose, gener_desk_instance, is_generating, is_generating2, linearly_independent,
    primary_anchors, primary_lines, GenerDesk, PrimaryLines,
};
pub use pappus::{check_pappus, PappusResult, PappusWitness};
pub use partial::{
    check_partial, check_partial_in, compat_witness, mult_compatible, partial_witness, unique_extension_equal,
    GroupLaw, PartialConfig, PartialReport, PartialStructure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjError {
    #[error("line {0} refers to a point outside the structure")]
    BadPoint(usize),
    #[error("line {0} is listed twice")]
    DuplicateLine(usize),
    #[error("line {0} has fewer than two points")]
    ShortLine(usize),
    #[error("points {0} and {1} lie on no common line")]
    NoLine(usize, usize),
    #[error("projective axioms fail: {0}")]
    Axioms(String),
    #[error("not a plane: dimension {0}")]
    NotAPlane(usize),
    #[error("construction does not close: {0}")]
    NonClosing(String),
    #[error("coordinate ring is not a field: {0}")]
    NotAField(String),
    #[error("bad group law: {0}")]
    Group(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
}

/// A finite point set with a family of subsets called lines. Lines are
/// stored sorted and the family is sorted, so equality is equality of
/// incidence structures on the same labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct IncidenceStructure {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
    member: Vec<Vec<bool>>,
    // pair_line[a][b]: the line through a and b when it is unique
    pair_line: Vec<Vec<Option<u32>>>,
    pair_count: Vec<Vec<u16>>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, o: &Self) -> bool {
        self.points == o.points && self.lines == o.lines
    }
}
impl Eq for IncidenceStructure {}

impl TryFrom<RawStructure> for IncidenceStructure {
    type Error = ProjError;
    fn try_from(r: RawStructure) -> Result<Self, ProjError> {
        IncidenceStructure::new(r.points, r.lines)
    }
}

impl From<IncidenceStructure> for RawStructure {
    fn from(s: IncidenceStructure) -> RawStructure {
        RawStructure { points: s.points, lines: s.lines }
    }
}

impl IncidenceStructure {
    pub fn new(points: Vec<String>, lines: Vec<Vec<usize>>) -> Result<IncidenceStructure, ProjError> {
        let n = points.len();
        let mut ls: Vec<Vec<usize>> = Vec::with_capacity(lines.len());
        for (i, mut l) in lines.into_iter().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.iter().any(|&p| p >= n) {
                return Err(ProjError::BadPoint(i));
            }
            if l.len() < 2 {
                return Err(ProjError::ShortLine(i));
            }
            ls.push(l);
        }
        ls.sort();
        if let Some(i) = ls.windows(2).position(|w| w[0] == w[1]) {
            return Err(ProjError::DuplicateLine(i + 1));
        }
        let mut member = vec![vec![false; n]; ls.len()];
        let mut pair_line = vec![vec![None; n]; n];
        let mut pair_count = vec![vec![0u16; n]; n];
        for (li, l) in ls.iter().enumerate() {
            for &p in l {
                member[li][p] = true;
            }
            for (k, &a) in l.iter().enumerate() {
                for &b in &l[k + 1..] {
                    pair_count[a][b] = pair_count[a][b].saturating_add(1);
                    pair_count[b][a] = pair_count[a][b];
                    pair_line[a][b] = Some(li as u32);
                    pair_line[b][a] = Some(li as u32);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if pair_count[a][b] != 1 {
                    pair_line[a][b] = None;
                }
            }
        }
        Ok(IncidenceStructure { points, lines: ls, member, pair_line, pair_count })
    }

    /// Points labelled 0..n.
    pub fn unlabelled(n: usize, lines: Vec<Vec<usize>>) -> Result<IncidenceStructure, ProjError> {
        IncidenceStructure::new((0..n).map(|i| i.to_string()).collect(), lines)
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.points
    }
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }
    pub fn contains(&self, line: usize, p: usize) -> bool {
        self.member[line][p]
    }
    /// Index of the unique line through two distinct points, if there is one.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        self.pair_line[a][b].map(|l| l as usize)
    }
    pub fn line_index(&self, pts: &[usize]) -> Option<usize> {
        let mut v = pts.to_vec();
        v.sort_unstable();
        self.lines.binary_search(&v).ok()
    }
    /// First common point of two lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        self.lines[l1].iter().copied().find(|&p| self.member[l2][p])
    }
    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || b == c || a == c {
            return true;
        }
        match self.line_through(a, b) {
            Some(l) => self.member[l][c],
            None => false,
        }
    }

    /// The substructure on a point subset: lines contained in it, reindexed.
    pub fn restrict(&self, subset: &[usize]) -> Result<IncidenceStructure, ProjError> {
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let mut pos = vec![usize::MAX; self.num_points()];
        for (i, &p) in sub.iter().enumerate() {
            pos[p] = i;
        }
        let lines = self
            .lines
            .iter()
            .filter(|l| l.iter().all(|&p| pos[p] != usize::MAX))
            .map(|l| l.iter().map(|&p| pos[p]).collect())
            .collect();
        let labels = sub.iter().map(|&p| self.points[p].clone()).collect();
        IncidenceStructure::new(labels, lines)
    }

    /// Same lines with points renamed by `perm` (old index to new index).
    pub fn permuted(&self, perm: &[usize]) -> Result<IncidenceStructure, ProjError> {
        let lines = self.lines.iter().map(|l| l.iter().map(|&p| perm[p]).collect()).collect();
        IncidenceStructure::new(self.points.clone(), lines)
    }

    fn unique_line(&self, a: usize, b: usize) -> Result<usize, ProjError> {
        self.line_through(a, b).ok_or(ProjError::NoLine(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub holds: bool,
    /// P1: [s, line] with s off the line when it holds. P2: [line].
    /// P3: [s, s']. P4: [s, s', t, t'].
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    fn from_witness(w: Option<Vec<usize>>) -> AxiomCheck {
        AxiomCheck { holds: w.is_none(), witness: w }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub p1: AxiomCheck,
    pub p2: AxiomCheck,
    pub p3: AxiomCheck,
    pub p4: AxiomCheck,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.p1.holds && self.p2.holds && self.p3.holds && self.p4.holds
    }
    /// Name of the first failing axiom.
    pub fn first_failure(&self) -> Option<&'static str> {
        [("P1", &self.p1), ("P2", &self.p2), ("P3", &self.p3), ("P4", &self.p4)]
            .into_iter()
            .find(|(_, c)| !c.holds)
            .map(|(n, _)| n)
    }
}

/// Exhaustive check of P1-P4. P4 ranges over quadruples whose four joining
/// lines are defined; with P3 in force that is every quadruple.
pub fn check_axioms(st: &IncidenceStructure) -> AxiomReport {
    let n = st.num_points();
    let p1 = {
        let hit = (0..st.lines.len())
            .find_map(|l| (0..n).find(|&s| !st.member[l][s]).map(|s| (s, l)));
        match hit {
            Some((s, l)) => AxiomCheck { holds: true, witness: Some(vec![s, l]) },
            None => AxiomCheck { holds: false, witness: None },
        }
    };
    let p2 = AxiomCheck::from_witness(
        st.lines.iter().position(|l| l.len() < 3).map(|i| vec![i]),
    );
    let p3 = AxiomCheck::from_witness(
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| st.pair_count[a][b] != 1)
            .map(|(a, b)| vec![a, b]),
    );
    let p4 = AxiomCheck::from_witness(p4_witness(st).map(|w| w.to_vec()));
    AxiomReport { p1, p2, p3, p4 }
}

fn p4_witness(st: &IncidenceStructure) -> Option<[usize; 4]> {
    let n = st.num_points();
    let lines_meet = |a: Option<usize>, b: Option<usize>| -> Option<bool> {
        Some(st.meet(a?, b?).is_some())
    };
    // the statement is invariant under (s,s',t,t') -> (t,t',s,s') and
    // (s,s',t,t') -> (s',s,t',t), so s may be taken smallest
    (0..n).into_par_iter().find_map_first(|s| {
        for s2 in s + 1..n {
            let lss = st.line_through(s, s2);
            for t in s + 1..n {
                if t == s2 {
                    continue;
                }
                let lst = st.line_through(s, t);
                for t2 in s + 1..n {
                    if t2 == s2 || t2 == t {
                        continue;
                    }
                    if lss.is_some() && lss == st.line_through(t, t2) {
                        continue;
                    }
                    if lines_meet(lss, st.line_through(t, t2)) == Some(true)
                        && lines_meet(lst, st.line_through(s2, t2)) == Some(false)
                    {
                        return Some([s, s2, t, t2]);
                    }
                }
            }
        }
        None
    })
}

/// s v S': s, the points of S', and every line joining s to a point of S'.
fn join(st: &IncidenceStructure, s: usize, set: &[bool]) -> Result<Vec<bool>, ProjError> {
    let mut out = set.to_vec();
    out[s] = true;
    for (p, &inside) in set.iter().enumerate() {
        if inside && p != s {
            let l = st.unique_line(s, p)?;
            for &r in &st.lines[l] {
                out[r] = true;
            }
        }
    }
    Ok(out)
}

/// Iterated join of the given points, ascending.
pub fn join_span(st: &IncidenceStructure, pts: &[usize]) -> Result<Vec<usize>, ProjError> {
    let n = st.num_points();
    if let Some(&p) = pts.iter().find(|&&p| p >= n) {
        return Err(ProjError::BadPoint(p));
    }
    let mut cur = vec![false; n];
    for &p in pts.iter().rev() {
        cur = join(st, p, &cur)?;
    }
    Ok((0..n).filter(|&i| cur[i]).collect())
}

/// Greedy independent subset of `pts` spanning the same set.
pub fn independent_basis(st: &IncidenceStructure, pts: &[usize]) -> Result<Vec<usize>, ProjError> {
    let n = st.num_points();
    let mut basis: Vec<usize> = Vec::new();
    let mut cur = vec![false; n];
    for &p in pts {
        if p >= n {
            return Err(ProjError::BadPoint(p));
        }
        if !cur[p] {
            cur = join(st, p, &cur)?;
            basis.push(p);
        }
    }
    Ok(basis)
}

pub fn is_independent(st: &IncidenceStructure, pts: &[usize]) -> Result<bool, ProjError> {
    for (i, &p) in pts.iter().enumerate() {
        let rest: Vec<usize> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q).collect();
        if rest.contains(&p) || join_span(st, &rest)?.binary_search(&p).is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the span of a nonempty point set.
pub fn dimension(st: &IncidenceStructure, pts: &[usize]) -> Result<usize, ProjError> {
    let b = independent_basis(st, pts)?;
    if b.is_empty() {
        return Err(ProjError::Precondition("empty point set".into()));
    }
    Ok(b.len() - 1)
}

pub fn structure_dimension(st: &IncidenceStructure) -> Result<usize, ProjError> {
    let all: Vec<usize> = (0..st.num_points()).collect();
    dimension(st, &all)
}

/// Distinct planes, each as the ascending span of a non-collinear triple.
pub fn planes(st: &IncidenceStructure) -> Result<Vec<Vec<usize>>, ProjError> {
    let n = st.num_points();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut covered = std::collections::HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if st.collinear(a, b, c) || covered.contains(&(a, b, c)) {
                    continue;
                }
                let span = join_span(st, &[a, b, c])?;
                for (i, &x) in span.iter().enumerate() {
                    for (j, &y) in span.iter().enumerate().skip(i + 1) {
                        for &z in &span[j + 1..] {
                            covered.insert((x, y, z));
                        }
                    }
                }
                out.push(span);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
