use std::fmt;

use crate::ffcore::Gf;
use crate::poly::{BPoly, UPoly};

/// Element of GF(q)(t): coprime numerator and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl RatFunc {
    /// Reduced form of num/den; panics if den is zero.
    pub fn new(num: UPoly, den: UPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { den: UPoly::one(num.field()), num };
        }
        let g = num.gcd(&den);
        let (n, d) = (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd"));
        let s = n.field().inv(d.lc());
        RatFunc { num: n.scale(s), den: d.scale(s) }
    }
    pub fn poly(p: UPoly) -> RatFunc {
        let one = UPoly::one(p.field());
        RatFunc { num: p, den: one }
    }
    pub fn constant(f: &Gf, a: u32) -> RatFunc {
        RatFunc::poly(UPoly::constant(f, a))
    }
    pub fn var(f: &Gf) -> RatFunc {
        RatFunc::poly(UPoly::var(f))
    }
    pub fn field(&self) -> &Gf {
        self.num.field()
    }
    pub fn num(&self) -> &UPoly {
        &self.num
    }
    pub fn den(&self) -> &UPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
    /// max(deg num, deg den)
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }
    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn scale(&self, a: u32) -> RatFunc {
        RatFunc::new(self.num.scale(a), self.den.clone())
    }
    pub fn inv(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }
    pub fn pow(&self, n: i64) -> RatFunc {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs();
        RatFunc { num: base.num.pow(k), den: base.den.pow(k) }
    }
    /// self(g)
    pub fn compose(&self, g: &RatFunc) -> RatFunc {
        let d = self.degree() as u64;
        let eval = |p: &UPoly| -> UPoly {
            // homogeneous evaluation p(N/D) * D^d
            let mut acc = UPoly::zero(self.field());
            for (i, &a) in p.coeffs().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let term = g.num.pow(i as u64).mul(&g.den.pow(d - i as u64)).scale(a);
                acc = acc.add(&term);
            }
            acc
        };
        RatFunc::new(eval(&self.num), eval(&self.den))
    }
    /// Representative of the class modulo nonzero constants: numerator monic.
    pub fn projective_class(&self) -> RatFunc {
        if self.is_zero() {
            return self.clone();
        }
        RatFunc { num: self.num.monic(), den: self.den.clone() }
    }
    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        format!("({})/({})", self.num.render(var), self.den.render(var))
    }
}

/// Element of GF(q)(x, y): coprime numerator and denominator, the
/// denominator normalized to leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc2 {
    num: BPoly,
    den: BPoly,
}

impl fmt::Debug for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl RatFunc2 {
    pub fn new(num: BPoly, den: BPoly) -> RatFunc2 {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc2 { den: BPoly::one(num.field()), num };
        }
        let g = num.gcd(&den);
        let (n, d) = (num.div_exact(&g).expect("gcd"), den.div_exact(&g).expect("gcd"));
        let s = n.field().inv(d.lc());
        RatFunc2 { num: n.scale(s), den: d.scale(s) }
    }
    pub fn poly(p: BPoly) -> RatFunc2 {
        let one = BPoly::one(p.field());
        RatFunc2 { num: p, den: one }
    }
    pub fn constant(f: &Gf, a: u32) -> RatFunc2 {
        RatFunc2::poly(BPoly::constant(f, a))
    }
    pub fn x(f: &Gf) -> RatFunc2 {
        RatFunc2::poly(BPoly::x(f))
    }
    pub fn y(f: &Gf) -> RatFunc2 {
        RatFunc2::poly(BPoly::y(f))
    }
    /// Embed r(t) as r(x).
    pub fn from_x(r: &RatFunc) -> RatFunc2 {
        RatFunc2::new(BPoly::from_x(r.num()), BPoly::from_x(r.den()))
    }
    pub fn field(&self) -> &Gf {
        self.num.field()
    }
    pub fn num(&self) -> &BPoly {
        &self.num
    }
    pub fn den(&self) -> &BPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
    pub fn add(&self, o: &RatFunc2) -> RatFunc2 {
        if self.den == o.den {
            return RatFunc2::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc2::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn sub(&self, o: &RatFunc2) -> RatFunc2 {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> RatFunc2 {
        RatFunc2 { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn scale(&self, a: u32) -> RatFunc2 {
        if a == 0 {
            return RatFunc2::constant(self.field(), 0);
        }
        RatFunc2 { num: self.num.scale(a), den: self.den.clone() }
    }
    pub fn mul(&self, o: &RatFunc2) -> RatFunc2 {
        RatFunc2::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn inv(&self) -> RatFunc2 {
        RatFunc2::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &RatFunc2) -> RatFunc2 {
        self.mul(&o.inv())
    }
    pub fn pow(&self, n: i64) -> RatFunc2 {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let k = n.unsigned_abs();
        RatFunc2 { num: base.num.pow(k), den: base.den.pow(k) }
    }
    pub fn render(&self) -> String {
        if self.den.constant_value() == Some(1) {
            return self.num.render("x", "y");
        }
        format!("({})/({})", self.num.render("x", "y"), self.den.render("x", "y"))
    }
}
