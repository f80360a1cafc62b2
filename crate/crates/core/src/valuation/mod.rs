//! Valuations on k(t) and k(x, y): closed points of the line, divisorial
//! valuations along plane curves, and rank-two flag valuations along a
//! curve and a point on it. Residues, compatibility, and recovery of the
//! valuation order from a flag map.

mod curve_field;
mod func;
mod order;

pub use curve_field::{chart_at_infinity, CElem, CurveField};
pub use func::{Func, FunctionSpan};
pub use order::{decomposition_respects, order_from_flagmap, FlagOrder};

use serde::Serialize;
use thiserror::Error;

use crate::poly::{factor2, plane_divisor, ClosedPoint, PlaneCurve, PolyError, RatFunc2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValError {
    #[error("valuation of zero")]
    Zero,
    #[error("function and valuation live on different fields")]
    MixedFields,
    #[error("curve is not irreducible")]
    Reducible,
    #[error("flag valuations need a curve of degree one in x or in y, got {0}")]
    NotAGraph(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("residues are defined for divisorial valuations only")]
    NotDivisorial,
    #[error("a span needs at least one generator")]
    EmptySpan,
    #[error("span generators are linearly dependent")]
    DependentSpan,
    #[error("map is not a flag map")]
    NotFlag,
    #[error("span contains no nonzero constant")]
    NoUnit,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Element of Z^r with the lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupValue(pub Vec<i64>);

impl GroupValue {
    pub fn add(&self, o: &GroupValue) -> GroupValue {
        GroupValue(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Order at a closed point of the line, on k(t).
    Point(ClosedPoint),
    /// Order along an irreducible curve of the plane, on k(x, y).
    Divisorial(PlaneCurve),
    /// (order along C, order at q of the leading coefficient restricted to C).
    Flag { curve: PlaneCurve, point: (u32, u32) },
}

impl Valuation {
    pub fn divisorial(curve: PlaneCurve) -> Result<Valuation, ValError> {
        if !curve.is_infinity() {
            let fs = factor2(curve.equation())?;
            if fs.len() != 1 || fs[0].1 != 1 {
                return Err(ValError::Reducible);
            }
        }
        Ok(Valuation::Divisorial(curve))
    }
    /// Flag valuation along C at the affine point q; C must be a graph.
    pub fn flag(curve: PlaneCurve, point: (u32, u32)) -> Result<Valuation, ValError> {
        let Valuation::Divisorial(curve) = Valuation::divisorial(curve)? else { unreachable!() };
        let cf = CurveField::new(&curve);
        if curve.is_infinity() || cf.degree() != 1 {
            return Err(ValError::NotAGraph(curve.render()));
        }
        if !cf.contains_point(point) {
            return Err(ValError::NotOnCurve);
        }
        Ok(Valuation::Flag { curve, point })
    }
    pub fn rank(&self) -> usize {
        match self {
            Valuation::Flag { .. } => 2,
            _ => 1,
        }
    }
    pub fn render(&self) -> String {
        match self {
            Valuation::Point(p) => format!("ord[{}]", p.render()),
            Valuation::Divisorial(c) => format!("ord[{}]", c.render()),
            Valuation::Flag { curve, point } => {
                format!("ord[{}; ({}, {})]", curve.render(), point.0, point.1)
            }
        }
    }
}

/// Value of a nonzero function.
pub fn ord(v: &Valuation, f: &Func) -> Result<GroupValue, ValError> {
    if f.is_zero() {
        return Err(ValError::Zero);
    }
    match (v, f) {
        (Valuation::Point(p), Func::T(r)) => Ok(GroupValue(vec![p.ord(r)])),
        (Valuation::Divisorial(c), Func::XY(r)) => Ok(GroupValue(vec![CurveField::new(c).order(r)])),
        (Valuation::Flag { curve, point }, Func::XY(r)) => {
            let cf = CurveField::new(curve);
            let (m, unit) = cf.unit_part(r);
            let g = cf.as_param_function(&unit).expect("graph curve");
            let at = ClosedPoint::rational(curve.field(), cf.param_of_point(*point));
            Ok(GroupValue(vec![m, at.ord(&g)]))
        }
        _ => Err(ValError::MixedFields),
    }
}

/// A residue modulo constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Residue {
    Trivial,
    /// Normalized restriction, rendered in the curve's coordinates.
    Nontrivial(String),
}

impl Residue {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Residue::Trivial)
    }
}

/// Restriction of f^ord(g) / g^ord(f) to C, taken modulo constants.
pub fn residue(v: &Valuation, f: &RatFunc2, g: &RatFunc2) -> Result<Residue, ValError> {
    let Valuation::Divisorial(c) = v else { return Err(ValError::NotDivisorial) };
    if f.is_zero() || g.is_zero() {
        return Err(ValError::Zero);
    }
    let cf = CurveField::new(c);
    let (mf, uf) = cf.unit_part(f);
    let (mg, ug) = cf.unit_part(g);
    let h = cf.mul(&cf.pow(&uf, mg), &cf.pow(&ug, -mf));
    if cf.is_constant(&h) {
        Ok(Residue::Trivial)
    } else {
        Ok(Residue::Nontrivial(cf.render(&cf.normalize(&h))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSweep {
    pub vanish: bool,
    /// Curves checked, in sweep order.
    pub checked: Vec<String>,
    /// First curve with a nontrivial residue and that residue.
    pub witness: Option<(String, String)>,
}

/// Curves where a residue of (f, g) can be nontrivial: the components of
/// div f and div g and the line at infinity.
pub fn residue_support(f: &RatFunc2, g: &RatFunc2) -> Result<Vec<PlaneCurve>, ValError> {
    let mut curves: Vec<PlaneCurve> = plane_divisor(f)?.into_iter().map(|(c, _)| c).collect();
    curves.extend(plane_divisor(g)?.into_iter().map(|(c, _)| c));
    curves.push(PlaneCurve::infinity(f.field()));
    curves.sort();
    curves.dedup();
    Ok(curves)
}

/// Sweep residues over [`residue_support`]; elsewhere both are units.
pub fn residues_vanish_all(f: &RatFunc2, g: &RatFunc2) -> Result<ResidueSweep, ValError> {
    let mut sweep = ResidueSweep { vanish: true, checked: Vec::new(), witness: None };
    for c in residue_support(f, g)? {
        sweep.checked.push(c.render());
        if let Residue::Nontrivial(r) = residue(&Valuation::Divisorial(c.clone()), f, g)? {
            sweep.vanish = false;
            sweep.witness = Some((c.render(), r));
            break;
        }
    }
    Ok(sweep)
}

/// Structural compatibility: a flag valuation refines the divisorial
/// valuation of its curve; distinct valuations are otherwise incompatible.
pub fn compatible(a: &Valuation, b: &Valuation) -> Result<bool, ValError> {
    use Valuation::*;
    match (a, b) {
        (Point(p), Point(q)) => Ok(p == q),
        (Point(_), _) | (_, Point(_)) => Err(ValError::MixedFields),
        (Divisorial(c), Divisorial(d)) => Ok(c == d),
        (Divisorial(c), Flag { curve, .. }) | (Flag { curve, .. }, Divisorial(c)) => Ok(c == curve),
        (Flag { curve: c1, point: q1 }, Flag { curve: c2, point: q2 }) => Ok(c1 == c2 && q1 == q2),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::Gf;
    use crate::poly::{BPoly, RatFunc, UPoly};

    fn f7() -> Gf {
        Gf::prime(7).unwrap()
    }
    fn line(f: &Gf, a: u32, b: u32, c: u32) -> PlaneCurve {
        PlaneCurve::affine(&BPoly::linear(f, a, b, c)).unwrap()
    }

    #[test]
    fn point_orders() {
        let f = Gf::prime(5).unwrap();
        let t = RatFunc::var(&f);
        let r = t.mul(&t).div(&t.sub(&RatFunc::constant(&f, 1)));
        let at0 = Valuation::Point(ClosedPoint::rational(&f, 0));
        assert_eq!(ord(&at0, &Func::T(r.clone())).unwrap(), GroupValue(vec![2]));
        let inf = Valuation::Point(ClosedPoint::Infinity);
        assert_eq!(ord(&inf, &Func::T(r)).unwrap(), GroupValue(vec![-1]));
    }

    #[test]
    fn flag_order_of_y_plus_x() {
        let f = Gf::prime(3).unwrap();
        let v = Valuation::flag(line(&f, 1, 0, 0), (0, 0)).unwrap();
        let h = RatFunc2::x(&f).add(&RatFunc2::y(&f));
        assert_eq!(ord(&v, &Func::XY(h)).unwrap(), GroupValue(vec![0, 1]));
        let x2y = RatFunc2::x(&f).pow(2).mul(&RatFunc2::y(&f).pow(3));
        assert_eq!(ord(&v, &Func::XY(x2y)).unwrap(), GroupValue(vec![2, 3]));
    }

    #[test]
    fn order_at_infinity_matches_chart() {
        let f = f7();
        let x = RatFunc2::x(&f);
        let y = RatFunc2::y(&f);
        let r = x.mul(&y).add(&RatFunc2::constant(&f, 1)).div(&x.add(&RatFunc2::constant(&f, 3)));
        let v = Valuation::Divisorial(PlaneCurve::infinity(&f));
        assert_eq!(ord(&v, &Func::XY(r)).unwrap(), GroupValue(vec![-1]));
    }

    #[test]
    fn residue_cases() {
        let f = Gf::prime(3).unwrap();
        let x = RatFunc2::x(&f);
        let y = RatFunc2::y(&f);
        let on_y0 = Valuation::Divisorial(line(&f, 0, 1, 0));
        assert_eq!(residue(&on_y0, &x, &y).unwrap(), Residue::Nontrivial("x".into()));
        let on_x0 = Valuation::Divisorial(line(&f, 1, 0, 0));
        let y1 = y.add(&RatFunc2::constant(&f, 1));
        assert_eq!(residue(&on_x0, &y, &y1).unwrap(), Residue::Trivial);
        assert_eq!(residue(&on_x0, &x.mul(&y), &x).unwrap(), Residue::Nontrivial("y".into()));
    }

    #[test]
    fn residue_on_conic_and_vertical_curve() {
        let f = f7();
        let x = RatFunc2::x(&f);
        let y = RatFunc2::y(&f);
        // x^2 + 1 is irreducible over GF(7)
        let vert = BPoly::from_x(&UPoly::new(&f, vec![1, 0, 1]));
        let v = Valuation::divisorial(PlaneCurve::affine(&vert).unwrap()).unwrap();
        let c = RatFunc2::poly(vert.clone());
        assert!(residue(&v, &x, &c).unwrap().is_trivial());
        assert!(!residue(&v, &y, &c).unwrap().is_trivial());
        // x^2 + y^2 - 1
        let conic = BPoly::from_terms(&f, &[(2, 0, 1), (0, 2, 1), (0, 0, 6)]);
        let v = Valuation::divisorial(PlaneCurve::affine(&conic).unwrap()).unwrap();
        let c = RatFunc2::poly(conic);
        assert!(!residue(&v, &x, &c).unwrap().is_trivial());
        // y^2 = 1 - x^2 on the conic, a function of x
        let ysq = y.mul(&y);
        let one_minus = RatFunc2::constant(&f, 1).sub(&x.mul(&x));
        assert!(residue(&v, &ysq.div(&one_minus), &c).unwrap().is_trivial());
    }

    #[test]
    fn compatibility_rules() {
        let f = Gf::prime(3).unwrap();
        let cx = line(&f, 1, 0, 0);
        let cy = line(&f, 0, 1, 0);
        let dx = Valuation::divisorial(cx.clone()).unwrap();
        let dy = Valuation::divisorial(cy).unwrap();
        let fl = Valuation::flag(cx, (0, 0)).unwrap();
        assert!(compatible(&dx, &fl).unwrap());
        assert!(!compatible(&dx, &dy).unwrap());
        assert!(compatible(&dx, &dx).unwrap());
        let pt = Valuation::Point(ClosedPoint::Infinity);
        assert_eq!(compatible(&pt, &dx), Err(ValError::MixedFields));
    }

    #[test]
    fn flag_rejects_bad_input() {
        let f = f7();
        let conic = BPoly::from_terms(&f, &[(2, 0, 1), (0, 2, 1), (0, 0, 6)]);
        let c = PlaneCurve::affine(&conic).unwrap();
        assert!(matches!(Valuation::flag(c, (1, 0)), Err(ValError::NotAGraph(_))));
        assert_eq!(Valuation::flag(line(&f, 1, 0, 0), (1, 0)), Err(ValError::NotOnCurve));
        let red = PlaneCurve::affine(&BPoly::x(&f).mul(&BPoly::y(&f))).unwrap();
        assert_eq!(Valuation::divisorial(red), Err(ValError::Reducible));
    }
}
