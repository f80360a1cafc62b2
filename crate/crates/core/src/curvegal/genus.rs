use serde::Serialize;

use super::{inertia_generator, pair_divisor, principal_divisor, CurveError, CurveGaloisElem};
use crate::ffcore::Gf;
use crate::poly::{ClosedPoint, RatFunc};

/// Galois data of a curve. Genus 0 is the concrete projective line, with
/// candidate finite quotients given by Kummer functions f (the quotient is
/// mu -> [mu, f] mod l^m). Positive genus is a declared token.
#[derive(Clone, Debug)]
pub enum CurveGaloisData {
    Line { field: Gf, ell: i64, m: u32, candidates: Vec<RatFunc> },
    Symbolic { genus: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub positive: bool,
    pub scanned: usize,
    pub witness: Option<String>,
}

/// True iff some declared nonzero finite quotient kills every inertia generator.
pub fn genus_detect(data: &CurveGaloisData) -> Result<GenusReport, CurveError> {
    match data {
        CurveGaloisData::Symbolic { genus } => Ok(GenusReport {
            positive: *genus >= 1,
            scanned: 0,
            witness: (*genus >= 1).then(|| format!("Z_l^{}", 2 * genus)),
        }),
        CurveGaloisData::Line { field, ell, m, candidates } => {
            for (i, f) in candidates.iter().enumerate() {
                let d = principal_divisor(f)?;
                // inertia outside supp div f pairs to zero
                let mut kills_inertia = true;
                for (p, _) in d.terms() {
                    if pair_divisor(&inertia_generator(field, *ell, *m, p)?, &d) != 0 {
                        kills_inertia = false;
                    }
                }
                // the line's group is topologically generated by inertia, so
                // the quotient is nonzero iff some generator survives
                let nonzero = !kills_inertia;
                if kills_inertia && nonzero {
                    return Ok(GenusReport { positive: true, scanned: i + 1, witness: Some(f.render("t")) });
                }
            }
            Ok(GenusReport { positive: false, scanned: candidates.len(), witness: None })
        }
    }
}

/// Points of one curve with a fixed level for its inertia generators.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub field: Gf,
    pub ell: i64,
    pub m: u32,
    pub points: Vec<ClosedPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CcMatch {
    pub a: i64,
    pub bijection: Vec<usize>,
}

/// Given images psi(delta_w) in B's coordinates for every generator w of A
/// and a declared bijection w -> w', find the unit a with
/// psi(delta_w) = a delta_w' for all w.
pub fn cc_match(
    a_data: &CurveData,
    b_data: &CurveData,
    images: &[CurveGaloisElem],
    bijection: &[usize],
) -> Result<CcMatch, CurveError> {
    let lvl = (b_data.ell, b_data.m);
    if (a_data.ell, a_data.m) != lvl {
        return Err(CurveError::LevelMismatch((a_data.ell, a_data.m), lvl));
    }
    let k = a_data.points.len();
    let mut seen = vec![false; b_data.points.len()];
    if images.len() != k || bijection.len() != k || b_data.points.len() != k {
        return Err(CurveError::BadBijection);
    }
    for &j in bijection {
        if j >= k || std::mem::replace(&mut seen[j], true) {
            return Err(CurveError::BadBijection);
        }
    }
    let mut unit: Option<i64> = None;
    for (i, img) in images.iter().enumerate() {
        if img.level() != lvl {
            return Err(CurveError::LevelMismatch(img.level(), lvl));
        }
        let partner = &b_data.points[bijection[i]];
        let c = img.canonical();
        let ex: Vec<(ClosedPoint, i64)> = c.exceptions().map(|(p, v)| (p.clone(), v)).collect();
        let a_i = match ex.as_slice() {
            [(p, v)] if p == partner => *v,
            _ => {
                return Err(CurveError::Inconsistent {
                    index: i,
                    detail: format!("image {} is not supported at {:?} alone", c.render(), partner),
                })
            }
        };
        if a_i % a_data.ell == 0 {
            return Err(CurveError::NotAUnit(a_i));
        }
        match unit {
            None => unit = Some(a_i),
            Some(a) if a != a_i => {
                return Err(CurveError::Inconsistent { index: i, detail: format!("scale {a_i} differs from {a}") })
            }
            _ => {}
        }
    }
    let a = unit.ok_or(CurveError::BadBijection)?;
    // the diagonal relation: the sum of images is a times the sum of partners
    let mut lhs = CurveGaloisElem::constant(&b_data.field, lvl.0, lvl.1, 0)?;
    let mut rhs = lhs.clone();
    for (i, img) in images.iter().enumerate() {
        lhs = lhs.add(img)?;
        rhs = rhs.add(&inertia_generator(&b_data.field, lvl.0, lvl.1, &b_data.points[bijection[i]])?)?;
    }
    if lhs != rhs.scale(a) {
        return Err(CurveError::Inconsistent { index: k, detail: "diagonal relation fails".into() });
    }
    Ok(CcMatch { a, bijection: bijection.to_vec() })
}
