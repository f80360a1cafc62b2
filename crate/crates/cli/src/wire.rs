//! JSON forms of the core objects.
//!
//! Univariate polynomials are coefficient lists, lowest degree first.
//! Bivariate polynomials are lists of `[i, j, c]` terms for `c x^i y^j`.
//! Closed points of the line are monic irreducible coefficient lists or
//! `"inf"`; plane curves are term lists or `"inf"` for the line at infinity.

use anyhow::{anyhow, bail, Result};
use serde::{Deserialize, Serialize};

use gfl_core::curvegal::{CurveGaloisElem, PointCode};
use gfl_core::ffcore::Gf;
use gfl_core::poly::{BPoly, ClosedPoint, PlaneCurve, RatFunc, RatFunc2, UPoly};
use gfl_core::valuation::{Func, Valuation};

pub type Terms = Vec<(usize, usize, u32)>;

fn one() -> Vec<u32> {
    vec![1]
}

fn one_terms() -> Terms {
    vec![(0, 0, 1)]
}

fn check_coeffs(f: &Gf, c: &[u32]) -> Result<()> {
    match c.iter().find(|&&a| a >= f.q()) {
        Some(a) => bail!("coefficient {a} is not an element of GF({})", f.q()),
        None => Ok(()),
    }
}

pub fn upoly(f: &Gf, c: &[u32]) -> Result<UPoly> {
    check_coeffs(f, c)?;
    Ok(UPoly::new(f, c.to_vec()))
}

pub fn bpoly(f: &Gf, t: &Terms) -> Result<BPoly> {
    check_coeffs(f, &t.iter().map(|x| x.2).collect::<Vec<_>>())?;
    Ok(BPoly::from_terms(f, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rat {
    pub num: Vec<u32>,
    #[serde(default = "one")]
    pub den: Vec<u32>,
}

impl Rat {
    pub fn of(r: &RatFunc) -> Rat {
        Rat { num: r.num().coeffs().to_vec(), den: r.den().coeffs().to_vec() }
    }
    pub fn decode(&self, f: &Gf) -> Result<RatFunc> {
        let den = upoly(f, &self.den)?;
        if den.is_zero() {
            bail!("zero denominator");
        }
        Ok(RatFunc::new(upoly(f, &self.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rat2 {
    pub num: Terms,
    #[serde(default = "one_terms")]
    pub den: Terms,
}

impl Rat2 {
    pub fn of(r: &RatFunc2) -> Rat2 {
        Rat2 { num: r.num().terms(), den: r.den().terms() }
    }
    pub fn decode(&self, f: &Gf) -> Result<RatFunc2> {
        let den = bpoly(f, &self.den)?;
        if den.is_zero() {
            bail!("zero denominator");
        }
        Ok(RatFunc2::new(bpoly(f, &self.num)?, den))
    }
}

/// A function on the line (`t`) or on the plane (`xy`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuncWire {
    T(Rat),
    Xy(Rat2),
}

impl FuncWire {
    pub fn decode(&self, f: &Gf) -> Result<Func> {
        Ok(match self {
            FuncWire::T(r) => Func::T(r.decode(f)?),
            FuncWire::Xy(r) => Func::XY(r.decode(f)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveWire {
    Name(String),
    Terms(Terms),
}

impl CurveWire {
    pub fn of(c: &PlaneCurve) -> CurveWire {
        if c.is_infinity() {
            CurveWire::Name("inf".into())
        } else {
            CurveWire::Terms(c.equation().terms())
        }
    }
    pub fn decode(&self, f: &Gf) -> Result<PlaneCurve> {
        match self {
            CurveWire::Name(s) if s == "inf" => Ok(PlaneCurve::infinity(f)),
            CurveWire::Name(s) => bail!("unknown curve name {s:?}"),
            CurveWire::Terms(t) => PlaneCurve::affine(&bpoly(f, t)?).map_err(|e| anyhow!("{e}")),
        }
    }
}

pub fn point(f: &Gf, c: &PointCode) -> Result<ClosedPoint> {
    c.decode(f).map_err(|e| anyhow!("bad closed point {c:?}: {e}"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ValuationWire {
    Point { point: PointCode },
    Divisorial { curve: CurveWire },
    Flag { curve: CurveWire, point: (u32, u32) },
}

impl ValuationWire {
    pub fn decode(&self, f: &Gf) -> Result<Valuation> {
        Ok(match self {
            ValuationWire::Point { point: p } => Valuation::Point(point(f, p)?),
            ValuationWire::Divisorial { curve } => Valuation::divisorial(curve.decode(f)?)?,
            ValuationWire::Flag { curve, point } => Valuation::flag(curve.decode(f)?, *point)?,
        })
    }
}

/// A Galois element of the line: default value plus exceptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemWire {
    #[serde(default)]
    pub default: i64,
    pub exceptions: Vec<(PointCode, i64)>,
}

impl ElemWire {
    pub fn of(e: &CurveGaloisElem) -> ElemWire {
        ElemWire {
            default: e.default_value(),
            exceptions: e.exceptions().map(|(p, v)| (PointCode::of(p), v)).collect(),
        }
    }
    pub fn decode(&self, f: &Gf, ell: i64, m: u32) -> Result<CurveGaloisElem> {
        let ex = self.exceptions.iter().map(|(c, v)| Ok((point(f, c)?, *v))).collect::<Result<Vec<_>>>()?;
        Ok(CurveGaloisElem::new(f, ell, m, self.default, ex)?)
    }
}

/// `a` written in base l as a polynomial in `l`, e.g. 1 + l for l + 1.
pub fn ell_adic(a: i64, ell: i64) -> String {
    if a == 0 {
        return "0".into();
    }
    let mut parts = Vec::new();
    let (mut r, mut k) = (a, 0);
    while r > 0 {
        let d = r % ell;
        if d != 0 {
            parts.push(match (k, d) {
                (0, _) => d.to_string(),
                (1, 1) => "l".to_string(),
                (1, _) => format!("{d}l"),
                (_, 1) => format!("l^{k}"),
                _ => format!("{d}l^{k}"),
            });
        }
        r /= ell;
        k += 1;
    }
    parts.join("+")
}
