use std::cmp::Ordering;
use std::fmt;

use crate::ffcore::Gf;
use crate::poly::UPoly;

/// Polynomial in x, y over GF(q), stored as a polynomial in y whose
/// coefficients are polynomials in x.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BPoly {
    f: Gf,
    c: Vec<UPoly>,
}

impl PartialOrd for BPoly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Total degree, then y-degree, then coefficients from the top.
impl Ord for BPoly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total_deg()
            .cmp(&o.total_deg())
            .then(self.c.len().cmp(&o.c.len()))
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "y"))
    }
}

impl BPoly {
    pub fn new(f: &Gf, mut c: Vec<UPoly>) -> BPoly {
        while c.last().is_some_and(|u| u.is_zero()) {
            c.pop();
        }
        BPoly { f: f.clone(), c }
    }
    pub fn zero(f: &Gf) -> BPoly {
        BPoly { f: f.clone(), c: Vec::new() }
    }
    pub fn one(f: &Gf) -> BPoly {
        BPoly::constant(f, 1)
    }
    pub fn constant(f: &Gf, a: u32) -> BPoly {
        BPoly::new(f, vec![UPoly::constant(f, a)])
    }
    pub fn x(f: &Gf) -> BPoly {
        BPoly::new(f, vec![UPoly::var(f)])
    }
    pub fn y(f: &Gf) -> BPoly {
        BPoly::new(f, vec![UPoly::zero(f), UPoly::one(f)])
    }
    pub fn from_x(u: &UPoly) -> BPoly {
        BPoly::new(u.field(), vec![u.clone()])
    }
    /// u(y)
    pub fn from_y(u: &UPoly) -> BPoly {
        let f = u.field();
        BPoly::new(f, u.coeffs().iter().map(|&a| UPoly::constant(f, a)).collect())
    }
    /// Sum of c * x^i * y^j.
    pub fn from_terms(f: &Gf, terms: &[(usize, usize, u32)]) -> BPoly {
        let mut out = BPoly::zero(f);
        for &(i, j, a) in terms {
            out = out.add(&BPoly::monomial(f, a, i, j));
        }
        out
    }
    pub fn monomial(f: &Gf, a: u32, i: usize, j: usize) -> BPoly {
        let mut c = vec![UPoly::zero(f); j + 1];
        c[j] = UPoly::monomial(f, a, i);
        BPoly::new(f, c)
    }
    /// a x + b y + c
    pub fn linear(f: &Gf, a: u32, b: u32, c: u32) -> BPoly {
        BPoly::from_terms(f, &[(1, 0, a), (0, 1, b), (0, 0, c)])
    }

    pub fn field(&self) -> &Gf {
        &self.f
    }
    pub fn y_coeffs(&self) -> &[UPoly] {
        &self.c
    }
    pub fn y_coeff(&self, j: usize) -> UPoly {
        self.c.get(j).cloned().unwrap_or_else(|| UPoly::zero(&self.f))
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1 && self.c.first().is_none_or(|u| u.is_constant())
    }
    pub fn constant_value(&self) -> Option<u32> {
        if self.is_zero() {
            return Some(0);
        }
        self.is_constant().then(|| self.c[0].coeff(0))
    }
    pub fn deg_y(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn deg_x(&self) -> i64 {
        self.c.iter().map(|u| u.deg()).max().unwrap_or(-1)
    }
    pub fn total_deg(&self) -> i64 {
        self.c.iter().enumerate().filter(|(_, u)| !u.is_zero()).map(|(j, u)| u.deg() + j as i64).max().unwrap_or(-1)
    }
    /// Nonzero terms (i, j, coefficient) of x^i y^j.
    pub fn terms(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for (j, u) in self.c.iter().enumerate() {
            for (i, &a) in u.coeffs().iter().enumerate() {
                if a != 0 {
                    out.push((i, j, a));
                }
            }
        }
        out
    }
    pub fn coeff(&self, i: usize, j: usize) -> u32 {
        self.c.get(j).map(|u| u.coeff(i)).unwrap_or(0)
    }
    /// Leading coefficient in the y-then-x order.
    pub fn lc(&self) -> u32 {
        self.c.last().map(|u| u.lc()).unwrap_or(0)
    }
    pub fn lc_y(&self) -> UPoly {
        self.c.last().cloned().unwrap_or_else(|| UPoly::zero(&self.f))
    }

    pub fn add(&self, o: &BPoly) -> BPoly {
        let n = self.c.len().max(o.c.len());
        BPoly::new(&self.f, (0..n).map(|j| self.y_coeff(j).add(&o.y_coeff(j))).collect())
    }
    pub fn sub(&self, o: &BPoly) -> BPoly {
        let n = self.c.len().max(o.c.len());
        BPoly::new(&self.f, (0..n).map(|j| self.y_coeff(j).sub(&o.y_coeff(j))).collect())
    }
    pub fn neg(&self) -> BPoly {
        BPoly::new(&self.f, self.c.iter().map(|u| u.neg()).collect())
    }
    pub fn scale(&self, a: u32) -> BPoly {
        BPoly::new(&self.f, self.c.iter().map(|u| u.scale(a)).collect())
    }
    pub fn scale_x(&self, u: &UPoly) -> BPoly {
        BPoly::new(&self.f, self.c.iter().map(|v| v.mul(u)).collect())
    }
    pub fn mul(&self, o: &BPoly) -> BPoly {
        if self.is_zero() || o.is_zero() {
            return BPoly::zero(&self.f);
        }
        let mut c = vec![UPoly::zero(&self.f); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        BPoly::new(&self.f, c)
    }
    pub fn shift_y(&self, d: usize) -> BPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![UPoly::zero(&self.f); d];
        c.extend(self.c.iter().cloned());
        BPoly::new(&self.f, c)
    }
    pub fn pow(&self, mut n: u64) -> BPoly {
        let mut base = self.clone();
        let mut acc = BPoly::one(&self.f);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Scale so that the leading coefficient is 1.
    pub fn normalized(&self) -> BPoly {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(self.f.inv(self.lc()))
    }
    pub fn swap_xy(&self) -> BPoly {
        let f = &self.f;
        let terms: Vec<_> = self.terms().into_iter().map(|(i, j, a)| (j, i, a)).collect();
        BPoly::from_terms(f, &terms)
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &BPoly) -> Option<BPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.f;
        let dl = d.c.len();
        let lcd = d.lc_y();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(f); self.c.len().saturating_sub(dl) + 1];
        while !r.is_zero() {
            if r.c.len() < dl {
                return None;
            }
            let k = r.c.len() - dl;
            let t = r.lc_y().div_exact(&lcd)?;
            r = r.sub(&d.scale_x(&t).shift_y(k));
            q[k] = q[k].add(&t);
        }
        Some(BPoly::new(f, q))
    }
    pub fn divides(&self, o: &BPoly) -> bool {
        o.div_exact(self).is_some()
    }

    /// gcd of the coefficients in x (monic).
    pub fn content_x(&self) -> UPoly {
        self.c.iter().fold(UPoly::zero(&self.f), |g, u| g.gcd(u))
    }
    pub fn primitive_part(&self) -> BPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content_x();
        BPoly::new(&self.f, self.c.iter().map(|u| u.div_exact(&g).expect("content divides")).collect())
    }

    /// Pseudo-remainder of self by d with respect to y.
    fn prem(&self, d: &BPoly) -> BPoly {
        let lcd = d.lc_y();
        let dl = d.c.len();
        let mut r = self.clone();
        while !r.is_zero() && r.c.len() >= dl {
            let k = r.c.len() - dl;
            let lr = r.lc_y();
            r = r.scale_x(&lcd).sub(&d.scale_x(&lr).shift_y(k));
        }
        r
    }

    /// Normalized gcd in GF(q)[x, y].
    pub fn gcd(&self, o: &BPoly) -> BPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content_x().gcd(&o.content_x());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        let g = if a.c.len() <= 1 { BPoly::one(&self.f) } else { a.primitive_part() };
        g.scale_x(&c).normalized()
    }

    pub fn eval(&self, x: u32, y: u32) -> u32 {
        let f = &self.f;
        self.c.iter().rev().fold(0, |acc, u| f.add(f.mul(acc, y), u.eval(x)))
    }
    /// Substitute y := a constant, leaving a polynomial in x.
    pub fn at_y(&self, y: u32) -> UPoly {
        let f = &self.f;
        self.c.iter().rev().fold(UPoly::zero(f), |acc, u| acc.scale(y).add(u))
    }
    /// Substitute x := a constant, leaving a polynomial in y.
    pub fn at_x(&self, x: u32) -> UPoly {
        UPoly::new(&self.f, self.c.iter().map(|u| u.eval(x)).collect())
    }
    /// Substitute y := num/den (polynomials in x); returns the numerator of
    /// the result over den^deg_y.
    pub fn subst_y(&self, num: &UPoly, den: &UPoly) -> UPoly {
        let f = &self.f;
        let d = self.c.len().saturating_sub(1) as u64;
        let mut out = UPoly::zero(f);
        for (j, u) in self.c.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            out = out.add(&u.mul(&num.pow(j as u64)).mul(&den.pow(d - j as u64)));
        }
        out
    }
    /// Substitute x := p(t), y := r(t) for univariate p, r.
    pub fn subst_poly(&self, p: &UPoly, r: &UPoly) -> UPoly {
        let f = &self.f;
        self.c.iter().rev().fold(UPoly::zero(f), |acc, u| acc.mul(r).add(&u.compose(p)))
    }
    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: usize) -> BPoly {
        let terms: Vec<_> = self.terms().into_iter().filter(|&(i, j, _)| i + j == d).collect();
        BPoly::from_terms(&self.f, &terms)
    }

    pub fn render(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.f;
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.0 + b.1, b.1, b.0).cmp(&(a.0 + a.1, a.1, a.0)));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(i, j, a)| {
                let mut mono = String::new();
                for (v, e) in [(vx, i), (vy, j)] {
                    match e {
                        0 => {}
                        1 => mono.push_str(v),
                        _ => mono.push_str(&format!("{v}^{e}")),
                    }
                }
                let coef = f.fmt_elem(a);
                if mono.is_empty() {
                    coef
                } else if a == 1 {
                    mono
                } else {
                    format!("{coef}{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}
