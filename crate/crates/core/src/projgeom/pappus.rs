use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::projgeom::{check_axioms, structure_dimension, AxiomReport, IncidenceStructure};

/// A hexagon A, B, C on one line and A', B', C' on another whose three
/// cross joins meet in non-collinear points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PappusWitness {
    pub lines: [usize; 2],
    /// A, B, C, A', B', C'
    pub points: [usize; 6],
    /// AB'.A'B, AC'.A'C, BC'.B'C
    pub meets: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PappusResult {
    AxiomFailure(AxiomReport),
    TooSmall(usize),
    Pappian,
    Counterexample(PappusWitness),
}

impl PappusResult {
    pub fn holds(&self) -> bool {
        matches!(self, PappusResult::Pappian)
    }
}

/// Exhausts the configurations on every pair of meeting lines. Triples on
/// the first line are taken ascending, those on the second in every order.
/// The first failing pair of lines in index order supplies the witness.
pub fn check_pappus(st: &IncidenceStructure) -> PappusResult {
    let report = check_axioms(st);
    if !report.all_hold() {
        return PappusResult::AxiomFailure(report);
    }
    match structure_dimension(st) {
        Ok(d) if d >= 2 => {}
        Ok(d) => return PappusResult::TooSmall(d),
        Err(_) => return PappusResult::AxiomFailure(report),
    }
    let nl = st.lines().len();
    let pairs: Vec<(usize, usize)> =
        (0..nl).flat_map(|a| (a + 1..nl).map(move |b| (a, b))).collect();
    let hit = pairs
        .par_iter()
        .find_map_first(|&(l, m)| st.meet(l, m).and_then(|o| scan_pair(st, l, m, o)));
    match hit {
        Some(w) => PappusResult::Counterexample(w),
        None => PappusResult::Pappian,
    }
}

fn scan_pair(st: &IncidenceStructure, l: usize, m: usize, o: usize) -> Option<PappusWitness> {
    let on_l: Vec<usize> = st.lines()[l].iter().copied().filter(|&p| p != o).collect();
    let on_m: Vec<usize> = st.lines()[m].iter().copied().filter(|&p| p != o).collect();
    let cross = |a: usize, b2: usize, a2: usize, b: usize| -> usize {
        let u = st.line_through(a, b2).expect("axioms checked");
        let v = st.line_through(a2, b).expect("axioms checked");
        st.meet(u, v).expect("coplanar lines meet")
    };
    for (i, &a) in on_l.iter().enumerate() {
        for (j, &b) in on_l.iter().enumerate().skip(i + 1) {
            for &c in &on_l[j + 1..] {
                for &a2 in &on_m {
                    for &b2 in &on_m {
                        if b2 == a2 {
                            continue;
                        }
                        let x = cross(a, b2, a2, b);
                        for &c2 in &on_m {
                            if c2 == a2 || c2 == b2 {
                                continue;
                            }
                            let y = cross(a, c2, a2, c);
                            let z = cross(b, c2, b2, c);
                            if !st.collinear(x, y, z) {
                                return Some(PappusWitness {
                                    lines: [l, m],
                                    points: [a, b, c, a2, b2, c2],
                                    meets: [x, y, z],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
