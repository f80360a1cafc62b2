//! Truncated l-adic divisors on the projective plane: the degree class map,
//! decomposition of class-zero divisors into principal pieces, supports of
//! truncated l-adic functions, and common generators of commuting pairs.

mod dd;
mod gff;

pub use dd::{dd_decompose, DdDecomposition, DdTerm};
pub use gff::{common_generator, express_in, gff_subfield, GffFailure, GffResult};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{factor2, plane_divisor, PlaneCurve, PolyError, RatFunc2};
use crate::valuation::ValError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LadicError {
    #[error("ell must be prime and the level between 1 and 12")]
    BadLevel,
    #[error("{0} is not irreducible")]
    Reducible(String),
    #[error("class {0} is nonzero")]
    NonzeroClass(i64),
    #[error("class is zero mod l^m but the coefficients do not lie in the image of the integer kernel")]
    NotDecomposable,
    #[error("a component of an l-adic function is zero")]
    ZeroComponent,
    #[error("level mismatch")]
    LevelMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Val(#[from] ValError),
}

fn modulus(ell: i64, m: u32) -> Result<i64, LadicError> {
    if ell < 2 || !(2..ell).all(|d| ell % d != 0) || m == 0 || m > 12 {
        return Err(LadicError::BadLevel);
    }
    ell.checked_pow(m).filter(|&n| n < 1 << 40).ok_or(LadicError::BadLevel)
}

/// Finite sum of distinct irreducible plane curves with coefficients in Z/l^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadicDivisor {
    ell: i64,
    m: u32,
    terms: BTreeMap<PlaneCurve, i64>,
}

impl LadicDivisor {
    pub fn new(ell: i64, m: u32, terms: Vec<(PlaneCurve, i64)>) -> Result<LadicDivisor, LadicError> {
        let n = modulus(ell, m)?;
        let mut map: BTreeMap<PlaneCurve, i64> = BTreeMap::new();
        for (c, a) in terms {
            if !c.is_infinity() {
                let fs = factor2(c.equation())?;
                if fs.len() != 1 || fs[0].1 != 1 {
                    return Err(LadicError::Reducible(c.render()));
                }
            }
            let e = map.entry(c).or_insert(0);
            *e = (*e + a).rem_euclid(n);
        }
        map.retain(|_, a| *a != 0);
        Ok(LadicDivisor { ell, m, terms: map })
    }
    pub fn level(&self) -> (i64, u32) {
        (self.ell, self.m)
    }
    pub fn modulus(&self) -> i64 {
        self.ell.pow(self.m)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&PlaneCurve, i64)> {
        self.terms.iter().map(|(c, &a)| (c, a))
    }
    pub fn coeff(&self, c: &PlaneCurve) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }
    pub fn support(&self) -> Vec<PlaneCurve> {
        self.terms.keys().cloned().collect()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn sub(&self, o: &LadicDivisor) -> Result<LadicDivisor, LadicError> {
        if self.level() != o.level() {
            return Err(LadicError::LevelMismatch);
        }
        let mut t: Vec<(PlaneCurve, i64)> = self.terms.iter().map(|(c, &a)| (c.clone(), a)).collect();
        t.extend(o.terms.iter().map(|(c, &a)| (c.clone(), -a)));
        LadicDivisor::new(self.ell, self.m, t)
    }
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, a)| format!("{a}*({})", c.render())).collect();
        parts.join(" + ")
    }
}

/// Degree of the class in Pic(P^2) = Z, reduced mod l^m.
pub fn class_map(d: &LadicDivisor) -> i64 {
    let n = d.modulus() as i128;
    d.terms.iter().fold(0i128, |acc, (c, &a)| (acc + a as i128 * c.degree() as i128).rem_euclid(n)) as i64
}

/// f_0 f_1^l ... f_{m-1}^{l^{m-1}}, truncated at level m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadicFunction {
    pub ell: i64,
    pub m: u32,
    pub parts: Vec<RatFunc2>,
}

impl LadicFunction {
    pub fn new(ell: i64, m: u32, parts: Vec<RatFunc2>) -> Result<LadicFunction, LadicError> {
        modulus(ell, m)?;
        if parts.iter().any(|p| p.is_zero()) {
            return Err(LadicError::ZeroComponent);
        }
        Ok(LadicFunction { ell, m, parts })
    }
    /// Nonconstant parts with their integer weights l^i, below the level.
    pub fn components(&self) -> Vec<(RatFunc2, i64)> {
        let mut w = 1i64;
        let mut out = Vec::new();
        for p in self.parts.iter().take(self.m as usize) {
            if !p.is_constant() {
                out.push((p.clone(), w));
            }
            w *= self.ell;
        }
        out
    }
    pub fn divisor(&self) -> Result<LadicDivisor, LadicError> {
        let mut terms = Vec::new();
        for (p, w) in self.components() {
            for (c, k) in plane_divisor(&p)? {
                terms.push((c, k * w));
            }
        }
        LadicDivisor::new(self.ell, self.m, terms)
    }
}

/// Curves whose accumulated coefficient is nonzero mod l^m.
pub fn supp_x(f: &LadicFunction) -> Result<Vec<PlaneCurve>, LadicError> {
    Ok(f.divisor()?.support())
}
