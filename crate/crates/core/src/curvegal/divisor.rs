use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::ffcore::Gf;
use crate::poly::{factor, ClosedPoint, PolyError, RatFunc, UPoly};

/// JSON form of a closed point: coefficient list (low degree first) or "inf".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointCode {
    Coeffs(Vec<u32>),
    Name(String),
}

impl PointCode {
    pub fn of(p: &ClosedPoint) -> PointCode {
        match p {
            ClosedPoint::Finite(u) => PointCode::Coeffs(u.coeffs().to_vec()),
            ClosedPoint::Infinity => PointCode::Name("inf".into()),
        }
    }
    pub fn decode(&self, f: &Gf) -> Result<ClosedPoint, PolyError> {
        match self {
            PointCode::Name(s) if s == "inf" => Ok(ClosedPoint::Infinity),
            PointCode::Name(_) => Err(PolyError::NotACurve),
            PointCode::Coeffs(c) => {
                if c.iter().any(|&a| a >= f.q()) {
                    return Err(PolyError::Reducible);
                }
                ClosedPoint::finite(&UPoly::new(f, c.clone()))
            }
        }
    }
}

/// Finite formal sum of closed points.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<ClosedPoint, i64>,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (ClosedPoint, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }
    pub fn add_term(&mut self, p: ClosedPoint, n: i64) {
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }
    pub fn coeff(&self, p: &ClosedPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }
    pub fn support(&self) -> Vec<ClosedPoint> {
        self.terms.keys().cloned().collect()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }
    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in o.terms() {
            d.add_term(p.clone(), n);
        }
        d
    }
    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(p, n)| (p.clone(), n * k)))
    }
    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, n)) in self.terms.iter().enumerate() {
            let (sign, a) = if *n < 0 { ("-", -n) } else { ("+", *n) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if a != 1 {
                s.push_str(&a.to_string());
            }
            s.push_str(&format!("{p:?}"));
        }
        s
    }
    pub fn codes(&self) -> Vec<(PointCode, i64)> {
        self.terms.iter().map(|(p, &n)| (PointCode::of(p), n)).collect()
    }
}

pub fn principal_divisor(f: &RatFunc) -> Result<Divisor, CurveError> {
    if f.is_zero() {
        return Err(CurveError::Zero);
    }
    let mut d = Divisor::zero();
    if !f.num().is_constant() {
        for (p, m) in factor(f.num()) {
            d.add_term(ClosedPoint::Finite(p), m as i64);
        }
    }
    if !f.den().is_constant() {
        for (p, m) in factor(f.den()) {
            d.add_term(ClosedPoint::Finite(p), -(m as i64));
        }
    }
    d.add_term(ClosedPoint::Infinity, f.den().deg() - f.num().deg());
    Ok(d)
}

/// Map from closed points to Z/l^m: a default value and finitely many
/// exceptions, compared modulo constant maps.
#[derive(Clone)]
pub struct CurveGaloisElem {
    field: Gf,
    ell: i64,
    m: u32,
    default: i64,
    exceptions: BTreeMap<ClosedPoint, i64>,
}

impl fmt::Debug for CurveGaloisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl PartialEq for CurveGaloisElem {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.level() == o.level() && self.canonical().exceptions == o.canonical().exceptions
    }
}
impl Eq for CurveGaloisElem {}

fn check_level(ell: i64, m: u32) -> Result<i64, CurveError> {
    if ell < 2 || !(2..ell).all(|d| ell % d != 0) || m == 0 {
        return Err(CurveError::BadLevel);
    }
    ell.checked_pow(m).filter(|&n| n < 1 << 40).ok_or(CurveError::BadLevel)
}

impl CurveGaloisElem {
    pub fn new(
        field: &Gf,
        ell: i64,
        m: u32,
        default: i64,
        exceptions: Vec<(ClosedPoint, i64)>,
    ) -> Result<CurveGaloisElem, CurveError> {
        let n = check_level(ell, m)?;
        let default = default.rem_euclid(n);
        let mut map = BTreeMap::new();
        for (p, v) in exceptions {
            let v = v.rem_euclid(n);
            if v != default {
                map.insert(p, v);
            } else {
                map.remove(&p);
            }
        }
        Ok(CurveGaloisElem { field: field.clone(), ell, m, default, exceptions: map })
    }
    pub fn constant(field: &Gf, ell: i64, m: u32, c: i64) -> Result<CurveGaloisElem, CurveError> {
        CurveGaloisElem::new(field, ell, m, c, vec![])
    }
    pub fn field(&self) -> &Gf {
        &self.field
    }
    pub fn level(&self) -> (i64, u32) {
        (self.ell, self.m)
    }
    pub fn modulus(&self) -> i64 {
        self.ell.pow(self.m)
    }
    pub fn default_value(&self) -> i64 {
        self.default
    }
    pub fn exceptions(&self) -> impl Iterator<Item = (&ClosedPoint, i64)> {
        self.exceptions.iter().map(|(p, &v)| (p, v))
    }
    pub fn value(&self, p: &ClosedPoint) -> i64 {
        self.exceptions.get(p).copied().unwrap_or(self.default)
    }
    /// Representative with default value 0.
    pub fn canonical(&self) -> CurveGaloisElem {
        self.shift(-self.default)
    }
    pub fn shift(&self, c: i64) -> CurveGaloisElem {
        let n = self.modulus();
        CurveGaloisElem {
            field: self.field.clone(),
            ell: self.ell,
            m: self.m,
            default: (self.default + c).rem_euclid(n),
            exceptions: self.exceptions.iter().map(|(p, v)| (p.clone(), (v + c).rem_euclid(n))).collect(),
        }
    }
    pub fn scale(&self, a: i64) -> CurveGaloisElem {
        let pts: Vec<_> = self.exceptions.iter().map(|(p, v)| (p.clone(), v * a)).collect();
        CurveGaloisElem::new(&self.field, self.ell, self.m, self.default * a, pts).expect("level already checked")
    }
    pub fn add(&self, o: &CurveGaloisElem) -> Result<CurveGaloisElem, CurveError> {
        if self.level() != o.level() {
            return Err(CurveError::LevelMismatch(self.level(), o.level()));
        }
        let mut pts: Vec<(ClosedPoint, i64)> = Vec::new();
        for p in self.exceptions.keys().chain(o.exceptions.keys()) {
            pts.push((p.clone(), self.value(p) + o.value(p)));
        }
        CurveGaloisElem::new(&self.field, self.ell, self.m, self.default + o.default, pts)
    }
    pub fn render(&self) -> String {
        let ex: Vec<String> = self.exceptions.iter().map(|(p, v)| format!("{p:?}->{v}")).collect();
        format!("{} else {} mod {}^{}", if ex.is_empty() { "{}".into() } else { ex.join(", ") }, self.default, self.ell, self.m)
    }
}

/// delta_P: 0 everywhere except 1 at P.
pub fn inertia_generator(field: &Gf, ell: i64, m: u32, p: &ClosedPoint) -> Result<CurveGaloisElem, CurveError> {
    CurveGaloisElem::new(field, ell, m, 0, vec![(p.clone(), 1)])
}

/// Sum over the support of sum mu(P) n_P deg(P), reduced into [0, l^m).
pub fn pair_divisor(mu: &CurveGaloisElem, d: &Divisor) -> i64 {
    let n = mu.modulus() as i128;
    let mut acc: i128 = 0;
    for (p, k) in d.terms() {
        acc = (acc + mu.value(p) as i128 * k as i128 * p.degree() as i128).rem_euclid(n);
    }
    acc as i64
}

pub fn kummer_pairing(mu: &CurveGaloisElem, f: &RatFunc) -> Result<i64, CurveError> {
    Ok(pair_divisor(mu, &principal_divisor(f)?))
}

/// Minimum over constants c of the number of points where mu differs from c.
pub fn support_size(mu: &CurveGaloisElem) -> usize {
    mu.exceptions.len()
}
