//! Function fields of irreducible plane curves, presented as k(s)[r]/(C)
//! where r is whichever coordinate C has the smaller positive degree in.

use crate::ffcore::Gf;
use crate::poly::{BPoly, PlaneCurve, RatFunc, RatFunc2};

type RPoly = Vec<RatFunc>;

fn trim(mut a: RPoly) -> RPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rp_sub(a: &RPoly, b: &RPoly, f: &Gf) -> RPoly {
    let n = a.len().max(b.len());
    let z = RatFunc::constant(f, 0);
    trim((0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect())
}

fn rp_mul(a: &RPoly, b: &RPoly, f: &Gf) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::constant(f, 0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

fn rp_divrem(a: &RPoly, d: &RPoly, f: &Gf) -> (RPoly, RPoly) {
    let mut r = a.clone();
    let dl = d.len();
    if r.len() < dl {
        return (Vec::new(), r);
    }
    let inv = d[dl - 1].inv();
    let mut q = vec![RatFunc::constant(f, 0); r.len() - dl + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + dl - 1].mul(&inv);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(dj));
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

/// Apply the chart x = 1/w, y = u/w of the plane, returned in variables (x, y) := (w, u).
pub fn chart_at_infinity(r: &RatFunc2) -> RatFunc2 {
    let f = r.field();
    let star = |p: &BPoly| -> BPoly {
        let d = p.total_deg() as usize;
        let terms: Vec<_> = p.terms().into_iter().map(|(i, j, a)| (d - i - j, j, a)).collect();
        BPoly::from_terms(f, &terms)
    };
    let shift = r.den().total_deg() - r.num().total_deg();
    let w = RatFunc2::x(f).pow(shift);
    RatFunc2::new(star(r.num()), star(r.den())).mul(&w)
}

/// An element of k(C): coordinates in the basis 1, r, ..., r^(d-1).
pub type CElem = Vec<RatFunc>;

#[derive(Clone, Debug)]
pub struct CurveField {
    curve: PlaneCurve,
    /// Equation in working coordinates (after chart change and swap).
    eq: BPoly,
    swapped: bool,
    modulus: RPoly,
}

impl CurveField {
    pub fn new(curve: &PlaneCurve) -> CurveField {
        let f = curve.field().clone();
        let base = if curve.is_infinity() { BPoly::x(&f) } else { curve.equation().clone() };
        let (dx, dy) = (base.deg_x(), base.deg_y());
        let swapped = !(dy >= 1 && (dx <= 0 || dy <= dx));
        let eq = if swapped { base.swap_xy() } else { base };
        let raw: RPoly = eq.y_coeffs().iter().map(|u| RatFunc::poly(u.clone())).collect();
        let lead = raw.last().expect("nonconstant").inv();
        let modulus = raw.iter().map(|c| c.mul(&lead)).collect();
        CurveField { curve: curve.clone(), eq, swapped, modulus }
    }
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }
    pub fn field(&self) -> &Gf {
        self.curve.field()
    }
    /// Degree of k(C) over k(s).
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    /// Name of the transcendental coordinate s.
    pub fn param_name(&self) -> &'static str {
        match (self.curve.is_infinity(), self.swapped) {
            (true, _) => "u",
            (false, false) => "x",
            (false, true) => "y",
        }
    }
    /// Name of the algebraic coordinate r.
    pub fn alg_name(&self) -> &'static str {
        match (self.curve.is_infinity(), self.swapped) {
            (true, _) => "w",
            (false, false) => "y",
            (false, true) => "x",
        }
    }
    /// Move a function into the working coordinates.
    pub fn prepare(&self, r: &RatFunc2) -> RatFunc2 {
        let r = if self.curve.is_infinity() { chart_at_infinity(r) } else { r.clone() };
        if self.swapped {
            RatFunc2::new(r.num().swap_xy(), r.den().swap_xy())
        } else {
            r
        }
    }
    fn strip(&self, p: &BPoly) -> (i64, BPoly) {
        let mut k = 0;
        let mut cur = p.clone();
        while let Some(q) = cur.div_exact(&self.eq) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }
    /// Order of vanishing along C of a nonzero function.
    pub fn order(&self, r: &RatFunc2) -> i64 {
        let w = self.prepare(r);
        self.strip(w.num()).0 - self.strip(w.den()).0
    }
    fn reduce_poly(&self, p: &BPoly) -> CElem {
        let a: RPoly = trim(p.y_coeffs().iter().map(|u| RatFunc::poly(u.clone())).collect());
        let r = rp_divrem(&a, &self.modulus, self.field()).1;
        self.pad(r)
    }
    fn pad(&self, mut r: RPoly) -> CElem {
        r.resize(self.degree(), RatFunc::constant(self.field(), 0));
        r
    }
    /// Order along C and the restriction of r / C^order to C.
    pub fn unit_part(&self, r: &RatFunc2) -> (i64, CElem) {
        let w = self.prepare(r);
        let (kn, n) = self.strip(w.num());
        let (kd, d) = self.strip(w.den());
        let nr = self.reduce_poly(&n);
        let dr = self.reduce_poly(&d);
        (kn - kd, self.mul(&nr, &self.inv(&dr)))
    }

    pub fn one(&self) -> CElem {
        let mut e = vec![RatFunc::constant(self.field(), 0); self.degree()];
        e[0] = RatFunc::constant(self.field(), 1);
        e
    }
    pub fn is_zero(&self, a: &CElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    pub fn mul(&self, a: &CElem, b: &CElem) -> CElem {
        let p = rp_mul(&trim(a.clone()), &trim(b.clone()), self.field());
        self.pad(rp_divrem(&p, &self.modulus, self.field()).1)
    }
    /// Inverse of a nonzero element via the extended Euclidean algorithm.
    pub fn inv(&self, a: &CElem) -> CElem {
        let f = self.field();
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.clone()));
        assert!(!r1.is_empty(), "inverting zero in a curve function field");
        let (mut t0, mut t1): (RPoly, RPoly) = (Vec::new(), vec![RatFunc::constant(f, 1)]);
        while !r1.is_empty() {
            let (q, r) = rp_divrem(&r0, &r1, f);
            let t2 = rp_sub(&t0, &rp_mul(&q, &t1, f), f);
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, t2);
        }
        // r0 is a nonzero constant of k(s)
        let c = r0[0].inv();
        let t: RPoly = trim(t0.iter().map(|x| x.mul(&c)).collect());
        self.pad(rp_divrem(&t, &self.modulus, f).1)
    }
    pub fn pow(&self, a: &CElem, n: i64) -> CElem {
        let mut base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Minimal polynomial over k(s), monic, constant term first.
    pub fn minimal_polynomial(&self, a: &CElem) -> Vec<RatFunc> {
        let d = self.degree();
        let mut powers: Vec<CElem> = vec![self.one()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), a);
            if let Some(c) = solve_rf(&powers, &next, d, self.field()) {
                let mut out: Vec<RatFunc> = c.iter().map(|x| x.neg()).collect();
                out.push(RatFunc::constant(self.field(), 1));
                return out;
            }
            powers.push(next);
        }
    }
    /// True iff the element is algebraic over the constant field k.
    pub fn is_constant(&self, a: &CElem) -> bool {
        self.minimal_polynomial(a).iter().all(|c| c.is_constant())
    }
    /// Representative modulo k^*: the top nonzero coordinate gets a monic numerator.
    pub fn normalize(&self, a: &CElem) -> CElem {
        let Some(top) = a.iter().rev().find(|c| !c.is_zero()) else { return a.clone() };
        let s = self.field().inv(top.num().lc());
        a.iter().map(|c| c.scale(s)).collect()
    }
    pub fn render(&self, a: &CElem) -> String {
        let s = self.param_name();
        let r = self.alg_name();
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.render(s);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs}){r}"),
                _ => format!("({cs}){r}^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
    /// For degree one fields, the element as a function of s.
    pub fn as_param_function(&self, a: &CElem) -> Option<RatFunc> {
        (self.degree() == 1).then(|| a[0].clone())
    }
    /// Coordinate s of an affine point in the original plane.
    pub fn param_of_point(&self, pt: (u32, u32)) -> u32 {
        if self.swapped {
            pt.1
        } else {
            pt.0
        }
    }
    pub fn contains_point(&self, pt: (u32, u32)) -> bool {
        !self.curve.is_infinity() && self.curve.equation().eval(pt.0, pt.1) == 0
    }
}

/// Solve sum c_i cols[i] = target over k(s); columns have length d.
fn solve_rf(cols: &[CElem], target: &CElem, d: usize, f: &Gf) -> Option<Vec<RatFunc>> {
    let k = cols.len();
    let zero = RatFunc::constant(f, 0);
    let mut m: Vec<Vec<RatFunc>> = (0..d)
        .map(|i| {
            let mut row: Vec<RatFunc> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..d).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].inv();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..d {
            if i != r && !m[i][col].is_zero() {
                let fac = m[i][col].clone();
                for j in 0..=k {
                    let t = fac.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if (r..d).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut out = vec![zero; k];
    for (row, &pc) in pivots.iter().enumerate() {
        out[pc] = m[row][k].clone();
    }
    Some(out)
}

