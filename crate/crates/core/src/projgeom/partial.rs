use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::projgeom::{structure_dimension, IncidenceStructure, ProjError};

/// A finite group on point indices, by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLaw {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupLaw {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupLaw, ProjError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(ProjError::Group("table must be square and closed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| ProjError::Group("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(ProjError::Group(format!("{a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(ProjError::Group(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupLaw { table, identity })
    }
    pub fn trivial() -> GroupLaw {
        GroupLaw { table: vec![vec![0]], identity: 0 }
    }
    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn translate(&self, s: usize, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&p| self.op(s, p)).collect();
        v.sort_unstable();
        v
    }
}

/// First (point, line) whose translate is not a line.
pub fn compat_witness(st: &IncidenceStructure, law: &GroupLaw) -> Result<Option<(usize, usize)>, ProjError> {
    if law.order() != st.num_points() {
        return Err(ProjError::Group("group law must be total on the points".into()));
    }
    for s in 0..law.order() {
        for (li, l) in st.lines().iter().enumerate() {
            if st.line_index(&law.translate(s, l)).is_none() {
                return Ok(Some((s, li)));
            }
        }
    }
    Ok(None)
}

/// Every translate of every line is a line.
pub fn mult_compatible(st: &IncidenceStructure, law: &GroupLaw) -> Result<bool, ProjError> {
    Ok(compat_witness(st, law)?.is_none())
}

/// A point set with a family of lines, at most one through any two points,
/// optionally closed under the translations of a group law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartial", into = "RawPartial")]
pub struct PartialStructure {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
    group: Option<GroupLaw>,
    pair_line: Vec<Vec<Option<u32>>>,
}

#[derive(Serialize, Deserialize)]
struct RawPartial {
    points: Vec<String>,
    lines: Vec<Vec<usize>>,
    #[serde(default)]
    group: Option<Vec<Vec<usize>>>,
}

impl TryFrom<RawPartial> for PartialStructure {
    type Error = ProjError;
    fn try_from(r: RawPartial) -> Result<Self, ProjError> {
        let group = r.group.map(GroupLaw::new).transpose()?;
        PartialStructure::new(r.points, r.lines, group)
    }
}

impl From<PartialStructure> for RawPartial {
    fn from(p: PartialStructure) -> RawPartial {
        RawPartial { points: p.points, lines: p.lines, group: p.group.map(|g| g.table) }
    }
}

impl PartialStructure {
    pub fn new(points: Vec<String>, lines: Vec<Vec<usize>>, group: Option<GroupLaw>) -> Result<PartialStructure, ProjError> {
        let n = points.len();
        let mut ls: Vec<Vec<usize>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        ls.sort();
        ls.dedup();
        let mut pair_line = vec![vec![None; n]; n];
        for (li, l) in ls.iter().enumerate() {
            if l.len() < 2 {
                return Err(ProjError::ShortLine(li));
            }
            if l.iter().any(|&p| p >= n) {
                return Err(ProjError::BadPoint(li));
            }
            for (k, &a) in l.iter().enumerate() {
                for &b in &l[k + 1..] {
                    if pair_line[a][b].is_some() {
                        return Err(ProjError::Precondition(format!("two lines through {a} and {b}")));
                    }
                    pair_line[a][b] = Some(li as u32);
                    pair_line[b][a] = Some(li as u32);
                }
            }
        }
        if let Some(g) = &group {
            if g.order() != n {
                return Err(ProjError::Group("group law must be total on the points".into()));
            }
            for s in 0..n {
                for (li, l) in ls.iter().enumerate() {
                    if ls.binary_search(&g.translate(s, l)).is_err() {
                        return Err(ProjError::Precondition(format!("translate of line {li} by {s} missing")));
                    }
                }
            }
        }
        Ok(PartialStructure { points, lines: ls, group, pair_line })
    }

    /// The lines of `st` with at least two points, as a partial structure.
    pub fn from_lines(st: &IncidenceStructure, lines: &[usize], group: Option<GroupLaw>) -> Result<PartialStructure, ProjError> {
        let ls = lines.iter().map(|&l| st.lines()[l].clone()).collect();
        PartialStructure::new(st.labels().to_vec(), ls, group)
    }

    /// All translates of the given lines under the group.
    pub fn translates_of(st: &IncidenceStructure, law: &GroupLaw, seeds: &[usize]) -> Result<PartialStructure, ProjError> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &l in seeds {
            for s in 0..law.order() {
                set.insert(law.translate(s, &st.lines()[l]));
            }
        }
        PartialStructure::new(st.labels().to_vec(), set.into_iter().collect(), Some(law.clone()))
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
    pub fn group(&self) -> Option<&GroupLaw> {
        self.group.as_ref()
    }
    fn line(&self, a: usize, b: usize) -> Option<usize> {
        self.pair_line[a][b].map(|l| l as usize)
    }
    fn on(&self, l: usize, p: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }
    fn meets(&self, l: usize, m: usize) -> bool {
        self.lines[l].iter().any(|&p| self.on(m, p))
    }
}

/// The seven lines for one triple, named by the points they join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialConfig {
    pub triple: [usize; 3],
    /// x, y, x', y'
    pub points: [usize; 4],
    /// l(y,r), l(y,s), l(t,x), l(y',r), l(y',s), l(t,x'), l(y,y')
    pub lines: [usize; 7],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialReport {
    pub holds: bool,
    pub triples_checked: usize,
    pub failing_triple: Option<[usize; 3]>,
}

/// Exhaustive search for the configuration on one ordered triple.
pub fn partial_witness(ps: &PartialStructure, r: usize, s: usize, t: usize) -> Option<PartialConfig> {
    let n = ps.num_points();
    let fresh = |p: usize| p != r && p != s && p != t;
    // half configurations: (y, x, l(y,r), l(y,s), l(t,x))
    let mut halves: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    for y in (0..n).filter(|&y| fresh(y)) {
        let (Some(lyr), Some(lys)) = (ps.line(y, r), ps.line(y, s)) else { continue };
        for &x in &ps.lines[lyr] {
            if !fresh(x) || x == y {
                continue;
            }
            let Some(ltx) = ps.line(t, x) else { continue };
            if ps.meets(ltx, lys) {
                halves.push((y, x, lyr, lys, ltx));
            }
        }
    }
    for &(y, x, lyr, lys, ltx) in &halves {
        for &(y2, x2, lyr2, lys2, ltx2) in &halves {
            if y2 == y || y2 == x || x2 == y || x2 == x {
                continue;
            }
            let Some(lyy) = ps.line(y, y2) else { continue };
            if !ps.meets(lyy, ltx) && !ps.meets(lyy, ltx2) {
                return Some(PartialConfig {
                    triple: [r, s, t],
                    points: [x, y, x2, y2],
                    lines: [lyr, lys, ltx, lyr2, lys2, ltx2, lyy],
                });
            }
        }
    }
    None
}

fn check_triples(ps: &PartialStructure, on_line: impl Fn(usize, usize, usize) -> bool + Sync) -> PartialReport {
    let n = ps.num_points();
    if n < 7 {
        return PartialReport { holds: false, triples_checked: 0, failing_triple: None };
    }
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|r| (0..n).flat_map(move |s| (0..n).map(move |t| [r, s, t])))
        .filter(|&[r, s, t]| r != s && s != t && r != t && on_line(r, s, t))
        .collect();
    let fail = triples.par_iter().find_first(|&&[r, s, t]| partial_witness(ps, r, s, t).is_none());
    PartialReport { holds: fail.is_none(), triples_checked: triples.len(), failing_triple: fail.copied() }
}

/// The configuration exists for every ordered triple of distinct points
/// lying on a common line of the structure. Off such triples it cannot
/// exist: all four auxiliary points would lie in the plane of r, s, t,
/// where l(y,y') and l(t,x) always meet.
pub fn check_partial(ps: &PartialStructure) -> PartialReport {
    check_triples(ps, |r, s, t| ps.line(r, s).is_some_and(|l| ps.on(l, t)))
}

/// As `check_partial`, with collinearity read in an ambient structure on the
/// same points.
pub fn check_partial_in(ps: &PartialStructure, ambient: &IncidenceStructure) -> Result<PartialReport, ProjError> {
    if ambient.num_points() != ps.num_points() {
        return Err(ProjError::Precondition("point sets differ".into()));
    }
    Ok(check_triples(ps, |r, s, t| ambient.collinear(r, s, t)))
}

/// Two projective structures of dimension at least 3 that share a partial
/// structure have the same lines. Checks the hypotheses, with the
/// configuration required on the collinear triples of both structures, then
/// compares.
pub fn unique_extension_equal(a: &IncidenceStructure, b: &IncidenceStructure, shared: &PartialStructure) -> Result<bool, ProjError> {
    if a.num_points() != b.num_points() || a.num_points() != shared.num_points() {
        return Err(ProjError::Precondition("point sets differ".into()));
    }
    for (name, st) in [("first", a), ("second", b)] {
        let d = structure_dimension(st)?;
        if d < 3 {
            return Err(ProjError::Precondition(format!("{name} structure has dimension {d}")));
        }
        if let Some(l) = shared.lines().iter().find(|l| st.line_index(l).is_none()) {
            return Err(ProjError::Precondition(format!("shared line {l:?} is not a line of the {name} structure")));
        }
    }
    for (name, st) in [("first", a), ("second", b)] {
        let rep = check_partial_in(shared, st)?;
        if !rep.holds {
            return Err(ProjError::Precondition(format!(
                "shared lines fail the configuration on triple {:?} of the {name} structure",
                rep.failing_triple
            )));
        }
    }
    Ok(a.lines() == b.lines())
}
