use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::ffcore::{nullspace, rref, Gf, Vector};
use crate::poly::{BPoly, RatFunc, RatFunc2, UPoly};
use crate::projgeom::{PartialStructure, ProjError};

fn divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|d| n % d == 0).collect()
}

fn monic_polys(f: &Gf, deg: usize) -> impl Iterator<Item = UPoly> + '_ {
    let q = f.q() as u64;
    (0..q.pow(deg as u32)).map(move |code| {
        let mut c = Vec::with_capacity(deg + 1);
        let mut r = code;
        for _ in 0..deg {
            c.push((r % q) as u32);
            r /= q;
        }
        c.push(1);
        UPoly::new(f, c)
    })
}

/// Inner functions of degree d up to post-composition with degree-1 maps:
/// N/D with N monic of degree d, D monic of smaller degree e, coprime, and
/// the t^e coefficient of N equal to zero.
fn canonical_inner(f: &Gf, d: usize) -> Vec<RatFunc> {
    let mut out = Vec::new();
    for e in 0..d {
        for den in monic_polys(f, e) {
            for num in monic_polys(f, d) {
                if num.coeff(e) != 0 || !num.gcd(&den).is_one() {
                    continue;
                }
                out.push(RatFunc::new(num, den.clone()));
            }
        }
    }
    out
}

/// Outer z of degree k with z(y) = x, by solving P B(y) = Q A(y) for the
/// coefficients of A and B after clearing the denominators of y.
fn solve_outer(x: &RatFunc, y: &RatFunc, k: usize) -> Option<RatFunc> {
    let f = x.field();
    let (p, q) = (x.num(), x.den());
    let (n, d) = (y.num(), y.den());
    let basis: Vec<UPoly> = (0..=k).map(|i| n.pow(i as u64).mul(&d.pow((k - i) as u64))).collect();
    let mut cols: Vec<UPoly> = basis.iter().map(|b| q.mul(b).neg()).collect();
    cols.extend(basis.iter().map(|b| p.mul(b)));
    let height = cols.iter().map(|c| c.degree() + 1).max().unwrap_or(1);
    let rows: Vec<Vector> = (0..height).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    for v in nullspace(f, &rows, cols.len()) {
        let a = UPoly::new(f, v[..=k].to_vec());
        let b = UPoly::new(f, v[k + 1..].to_vec());
        if b.is_zero() {
            continue;
        }
        let z = RatFunc::new(a, b);
        if z.degree() == k && z.compose(y) == *x {
            return Some(z);
        }
    }
    None
}

/// A decomposition x = z(y) with both degrees at least 2, if one exists over
/// the base field. The inner function is returned in canonical form.
pub fn decompose(x: &RatFunc) -> Option<(RatFunc, RatFunc)> {
    let n = x.degree();
    for d in divisors(n) {
        for y in canonical_inner(x.field(), d) {
            if let Some(z) = solve_outer(x, &y, n / d) {
                return Some((z, y));
            }
        }
    }
    None
}

/// Nonconstant x that admits no decomposition with both degrees at least 2.
/// Constants are reported as not generating.
pub fn is_generating(x: &RatFunc) -> bool {
    !x.is_constant() && decompose(x).is_none()
}

fn as_univariate(r: &RatFunc2, in_y: bool) -> RatFunc {
    let take = |p: &BPoly| {
        let p = if in_y { p.swap_xy() } else { p.clone() };
        p.y_coeff(0)
    };
    RatFunc::new(take(r.num()), take(r.den()))
}

/// Generating test in GF(q)(x, y): k(r) algebraically closed in k(x, y).
/// A function of one variable is closed only when it has degree 1, since
/// that variable is algebraic over it. Otherwise a decomposition z(h) forces
/// deg z to divide both partial degrees, so coprime partial degrees certify
/// the answer; anything else is reported undecided.
pub fn is_generating2(r: &RatFunc2) -> Option<bool> {
    if r.is_constant() {
        return Some(false);
    }
    let dx = r.num().deg_x().max(r.den().deg_x()).max(0) as u64;
    let dy = r.num().deg_y().max(r.den().deg_y()).max(0) as u64;
    if dy == 0 {
        return Some(as_univariate(r, false).degree() == 1);
    }
    if dx == 0 {
        return Some(as_univariate(r, true).degree() == 1);
    }
    let (mut a, mut b) = (dx, dy);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 1 {
        Some(true)
    } else {
        None
    }
}

/// Linear independence over the base field, after clearing denominators.
pub fn linearly_independent(fs: &[RatFunc2]) -> bool {
    let Some(first) = fs.first() else { return true };
    let f = first.field().clone();
    let common = fs.iter().fold(BPoly::one(&f), |acc, r| acc.mul(r.den()));
    let polys: Vec<BPoly> = fs
        .iter()
        .map(|r| r.num().mul(&common.div_exact(r.den()).expect("factor of the product")))
        .collect();
    let mut monos: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in &polys {
        monos.extend(p.terms().into_iter().map(|(i, j, _)| (i, j)));
    }
    let rows: Vec<Vector> = polys.iter().map(|p| monos.iter().map(|&(i, j)| p.coeff(i, j)).collect()).collect();
    rref(&f, &rows, monos.len()).len() == fs.len()
}

/// One sample of the recipe on t = x^2 in GF(q)(x, y): two functions of
/// degree one along the fibres of x, their shifted quotients by t, and the
/// linear independence of 1, y, y', t.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerDesk {
    pub t: String,
    pub t_generating: bool,
    pub elements: Vec<(String, Option<bool>)>,
    pub independent: bool,
}

impl GenerDesk {
    pub fn holds(&self) -> bool {
        !self.t_generating && self.independent && self.elements.iter().all(|(_, g)| *g == Some(true))
    }
}

/// `kappas` = (k1, k2, k1', k2'), all nonzero.
pub fn gener_desk_instance(f: &Gf, kappas: [u32; 4]) -> GenerDesk {
    let x = RatFunc2::x(f);
    let y = RatFunc2::y(f);
    let one = RatFunc2::constant(f, 1);
    let t = x.mul(&x);
    let y2 = x.mul(&y).add(&one);
    let c = |a: u32| RatFunc2::constant(f, a);
    let [k1, k2, k1b, k2b] = kappas;
    let elems = [
        y.clone(),
        y.div(&t.add(&c(k1))),
        y.add(&c(k2)).div(&t),
        y2.clone(),
        y2.div(&t.add(&c(k1b))),
        y2.add(&c(k2b)).div(&t),
    ];
    GenerDesk {
        t: t.render(),
        t_generating: is_generating2(&t) != Some(false),
        elements: elems.iter().map(|e| (e.render(), is_generating2(e))).collect(),
        independent: linearly_independent(&[one, y, y2, t]),
    }
}

/// Classes of nonzero functions with numerator and denominator degree at
/// most d, numerator monic.
fn capped_points(f: &Gf, d: usize) -> Vec<RatFunc> {
    let mut out = Vec::new();
    for dn in 0..=d {
        for num in monic_polys(f, dn) {
            for dd in 0..=d {
                for den in monic_polys(f, dd) {
                    if num.gcd(&den).is_one() {
                        out.push(RatFunc::new(num.clone(), den));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Generating points of the capped set.
pub fn primary_anchors(f: &Gf, d: usize) -> Vec<RatFunc> {
    capped_points(f, d).into_iter().filter(is_generating).collect()
}

/// Lines through 1 and a generating x inside the capped point set, with
/// their multiplicative translates that stay in the cap.
#[derive(Clone, Debug)]
pub struct PrimaryLines {
    pub points: Vec<RatFunc>,
    pub anchors: Vec<usize>,
    /// indices into `structure.lines()` of the lines through 1
    pub primary: Vec<usize>,
    pub structure: PartialStructure,
    /// distinct translates that leave the cap
    pub omitted: usize,
}

pub fn primary_lines(f: &Gf, d: usize) -> Result<PrimaryLines, ProjError> {
    let points = capped_points(f, d);
    let index: HashMap<RatFunc, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let class = |r: &RatFunc| index.get(&r.projective_class()).copied();
    let anchors: Vec<usize> = (0..points.len()).filter(|&i| is_generating(&points[i])).collect();
    let mut primary: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &a in &anchors {
        let x = &points[a];
        let mut l = vec![class(&RatFunc::constant(f, 1)).expect("1 is in the cap")];
        for k in f.elements() {
            l.push(class(&x.add(&RatFunc::constant(f, k))).expect("same degree as x"));
        }
        l.sort_unstable();
        primary.insert(l);
    }
    let mut lines: BTreeSet<Vec<usize>> = primary.clone();
    let mut omitted: BTreeSet<Vec<RatFunc>> = BTreeSet::new();
    for l in &primary {
        for s in &points {
            let moved: Vec<RatFunc> = l.iter().map(|&i| s.mul(&points[i]).projective_class()).collect();
            let idx: Option<Vec<usize>> = moved.iter().map(&class).collect();
            match idx {
                Some(mut v) => {
                    v.sort_unstable();
                    lines.insert(v);
                }
                None => {
                    let mut m = moved;
                    m.sort();
                    omitted.insert(m);
                }
            }
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    let prim_idx = lines.iter().enumerate().filter(|(_, l)| primary.contains(*l)).map(|(i, _)| i).collect();
    let labels = points.iter().map(|p| p.render("t")).collect();
    let structure = PartialStructure::new(labels, lines, None)?;
    Ok(PrimaryLines { points, anchors, primary: prim_idx, structure, omitted: omitted.len() })
}
