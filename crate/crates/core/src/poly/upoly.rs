use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::ffcore::Gf;

/// Dense univariate polynomial over GF(q), constant term first, no trailing zeros.
#[derive(Clone)]
pub struct UPoly {
    f: Gf,
    c: Vec<u32>,
}

impl PartialEq for UPoly {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && self.f == o.f
    }
}
impl Eq for UPoly {}

impl Hash for UPoly {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.c.hash(h);
    }
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for UPoly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl UPoly {
    pub fn new(f: &Gf, mut c: Vec<u32>) -> UPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { f: f.clone(), c }
    }
    pub fn zero(f: &Gf) -> UPoly {
        UPoly { f: f.clone(), c: Vec::new() }
    }
    pub fn one(f: &Gf) -> UPoly {
        UPoly::constant(f, 1)
    }
    pub fn constant(f: &Gf, a: u32) -> UPoly {
        UPoly::new(f, vec![a])
    }
    /// The variable itself.
    pub fn var(f: &Gf) -> UPoly {
        UPoly::new(f, vec![0, 1])
    }
    pub fn monomial(f: &Gf, a: u32, d: usize) -> UPoly {
        let mut c = vec![0; d + 1];
        c[d] = a;
        UPoly::new(f, c)
    }
    /// `t - a`
    pub fn linear_root(f: &Gf, a: u32) -> UPoly {
        UPoly::new(f, vec![f.neg(a), 1])
    }

    pub fn field(&self) -> &Gf {
        &self.f
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Degree, with the zero polynomial at -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.f.add(self.coeff(i), o.coeff(i))).collect();
        UPoly::new(&self.f, c)
    }
    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.f.sub(self.coeff(i), o.coeff(i))).collect();
        UPoly::new(&self.f, c)
    }
    pub fn neg(&self) -> UPoly {
        UPoly::new(&self.f, self.c.iter().map(|&a| self.f.neg(a)).collect())
    }
    pub fn scale(&self, a: u32) -> UPoly {
        UPoly::new(&self.f, self.c.iter().map(|&x| self.f.mul(x, a)).collect())
    }
    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.f);
        }
        let f = &self.f;
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, c)
    }
    pub fn shift(&self, d: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; d];
        c.extend_from_slice(&self.c);
        UPoly::new(&self.f, c)
    }
    pub fn pow(&self, mut n: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(&self.f);
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
    pub fn monic(&self) -> UPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.f.inv(self.lc()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.f;
        if self.c.len() < d.c.len() {
            return (UPoly::zero(f), self.clone());
        }
        let mut r = self.c.clone();
        let dl = d.c.len();
        let inv = f.inv(d.lc());
        let mut q = vec![0u32; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = f.mul(r[k + dl - 1], inv);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(coef, dj));
            }
        }
        (UPoly::new(f, q), UPoly::new(f, r))
    }
    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }
    pub fn divides(&self, o: &UPoly) -> bool {
        o.rem(self).is_zero()
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g monic.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let f = &self.f;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(f), UPoly::zero(f));
        let (mut t0, mut t1) = (UPoly::zero(f), UPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn eval(&self, a: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &x| self.f.add(self.f.mul(acc, a), x))
    }
    pub fn derivative(&self) -> UPoly {
        let f = &self.f;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(f.from_int(i as i64), a));
        UPoly::new(f, c.collect())
    }
    /// self(g)
    pub fn compose(&self, g: &UPoly) -> UPoly {
        self.c.iter().rev().fold(UPoly::zero(&self.f), |acc, &a| {
            acc.mul(g).add(&UPoly::constant(&self.f, a))
        })
    }
    pub fn mulmod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        self.mul(o).rem(m)
    }
    pub fn powmod(&self, mut n: u128, m: &UPoly) -> UPoly {
        let mut base = self.rem(m);
        let mut acc = UPoly::one(&self.f).rem(m);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }
    /// Roots in GF(q), ascending.
    pub fn roots(&self) -> Vec<u32> {
        self.f.elements().filter(|&a| self.eval(a) == 0).collect()
    }

    /// Multiplicity of `p` (nonconstant) as a factor; `self` must be nonzero.
    pub fn multiplicity(&self, p: &UPoly) -> (u32, UPoly) {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        (k, cur)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.f;
        let mut terms = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let coef = f.fmt_elem(a);
            let coef = if f.e() > 1 && coef.contains('+') { format!("({coef})") } else { coef };
            terms.push(match i {
                0 => coef,
                1 if a == 1 => var.to_string(),
                1 => format!("{coef}{var}"),
                _ if a == 1 => format!("{var}^{i}"),
                _ => format!("{coef}{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}
