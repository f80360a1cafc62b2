//! Factorization in GF(q)[x, y] at desk scale: univariate contents, then
//! trial division by lines and conics. Complete for total degree at most 5
//! once linear and conic factors are removed.

use crate::ffcore::Gf;
use crate::poly::{factor, BPoly, PolyError, RatFunc2};

/// Largest leftover degree that is certified irreducible without cubic trial division.
const CERTIFIED_DEGREE: i64 = 5;

/// Normalized irreducible factors with multiplicities, sorted; constants dropped.
pub fn factor2(a: &BPoly) -> Result<Vec<(BPoly, u32)>, PolyError> {
    if a.is_zero() {
        return Err(PolyError::Zero);
    }
    let f = a.field().clone();
    let mut out: Vec<(BPoly, u32)> = Vec::new();
    // content in x: factors depending on x only
    let cx = a.content_x();
    for (u, m) in factor(&cx) {
        out.push((BPoly::from_x(&u), m));
    }
    let mut rest = a.primitive_part();
    // content in y
    let sw = rest.swap_xy();
    let cy = sw.content_x();
    for (u, m) in factor(&cy) {
        out.push((BPoly::from_y(&u), m));
    }
    rest = sw.primitive_part().swap_xy();

    if rest.total_deg() >= 2 {
        for line in lines(&f) {
            let (k, r) = strip(&rest, &line);
            if k > 0 {
                out.push((line, k));
                rest = r;
            }
            if rest.total_deg() < 2 {
                break;
            }
        }
    }
    if rest.total_deg() >= 4 {
        for conic in conics(&f) {
            let (k, r) = strip(&rest, &conic);
            if k > 0 {
                out.push((conic, k));
                rest = r;
            }
            if rest.total_deg() < 4 {
                break;
            }
        }
    }
    let d = rest.total_deg();
    if d > CERTIFIED_DEGREE {
        return Err(PolyError::FactorDegree(d as usize));
    }
    if d >= 1 {
        out.push((rest.normalized(), 1));
    }
    for (p, _) in out.iter_mut() {
        *p = p.normalized();
    }
    out.sort();
    Ok(out)
}

fn strip(a: &BPoly, p: &BPoly) -> (u32, BPoly) {
    let mut k = 0;
    let mut cur = a.clone();
    while let Some(q) = cur.div_exact(p) {
        cur = q;
        k += 1;
    }
    (k, cur)
}

/// Affine lines a x + b y + c with both a, b nonzero, normalized.
fn lines(f: &Gf) -> Vec<BPoly> {
    let mut out = Vec::new();
    for a in 1..f.q() {
        for c in 0..f.q() {
            // b = 1 after normalization (leading coefficient is that of y)
            out.push(BPoly::linear(f, a, 1, c));
        }
    }
    out
}

/// Affine conics with a nonzero quadratic part, normalized.
fn conics(f: &Gf) -> Vec<BPoly> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    let monos = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];
    for code in 0..q.pow(6) {
        let mut r = code;
        let mut terms = Vec::with_capacity(6);
        for &(i, j) in &monos {
            terms.push((i, j, (r % q) as u32));
            r /= q;
        }
        if terms[..3].iter().all(|t| t.2 == 0) {
            continue;
        }
        let p = BPoly::from_terms(f, &terms);
        if p.lc() == 1 && p.deg_x() >= 1 && p.deg_y() >= 1 {
            out.push(p);
        }
    }
    out
}

/// Irreducible curve in the projective plane: the affine equation together
/// with the projective degree. The line at infinity is the constant 1 with
/// degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneCurve {
    deg: u32,
    aff: BPoly,
}

impl PlaneCurve {
    pub fn affine(p: &BPoly) -> Result<PlaneCurve, PolyError> {
        if p.total_deg() < 1 {
            return Err(PolyError::NotACurve);
        }
        Ok(PlaneCurve { deg: p.total_deg() as u32, aff: p.normalized() })
    }
    pub fn infinity(f: &Gf) -> PlaneCurve {
        PlaneCurve { deg: 1, aff: BPoly::one(f) }
    }
    pub fn is_infinity(&self) -> bool {
        self.aff.is_constant()
    }
    pub fn degree(&self) -> u32 {
        self.deg
    }
    pub fn equation(&self) -> &BPoly {
        &self.aff
    }
    pub fn field(&self) -> &Gf {
        self.aff.field()
    }
    pub fn render(&self) -> String {
        if self.is_infinity() {
            "z".into()
        } else {
            self.aff.render("x", "y")
        }
    }
}

/// Divisor of a rational function on the projective plane, sorted by curve.
pub fn plane_divisor(r: &RatFunc2) -> Result<Vec<(PlaneCurve, i64)>, PolyError> {
    if r.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut out: Vec<(PlaneCurve, i64)> = Vec::new();
    for (p, m) in factor2(r.num())? {
        out.push((PlaneCurve::affine(&p)?, m as i64));
    }
    for (p, m) in factor2(r.den())? {
        out.push((PlaneCurve::affine(&p)?, -(m as i64)));
    }
    let at_inf = r.den().total_deg() - r.num().total_deg();
    if at_inf != 0 {
        out.push((PlaneCurve::infinity(r.field()), at_inf));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Multiply a factor list back out.
pub fn expand(f: &Gf, fs: &[(BPoly, u32)]) -> BPoly {
    fs.iter().fold(BPoly::one(f), |acc, (p, m)| acc.mul(&p.pow(*m as u64)))
}
