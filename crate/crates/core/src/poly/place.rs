use std::fmt;

use crate::ffcore::Gf;
use crate::poly::{is_irreducible, PolyError, RatFunc, UPoly};

/// Closed point of the projective line over GF(q): a monic irreducible
/// polynomial in t, or the point at infinity. Infinity sorts last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    Finite(UPoly),
    Infinity,
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render())
    }
}

impl ClosedPoint {
    /// Checked constructor: the polynomial is made monic and must be irreducible.
    pub fn finite(p: &UPoly) -> Result<ClosedPoint, PolyError> {
        let m = p.monic();
        if !is_irreducible(&m) {
            return Err(PolyError::Reducible);
        }
        Ok(ClosedPoint::Finite(m))
    }
    /// The rational point t = a.
    pub fn rational(f: &Gf, a: u32) -> ClosedPoint {
        ClosedPoint::Finite(UPoly::linear_root(f, a))
    }
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.degree(),
            ClosedPoint::Infinity => 1,
        }
    }
    /// Order of vanishing of a nonzero rational function.
    pub fn ord(&self, r: &RatFunc) -> i64 {
        assert!(!r.is_zero(), "order of zero");
        match self {
            ClosedPoint::Finite(p) => {
                r.num().multiplicity(p).0 as i64 - r.den().multiplicity(p).0 as i64
            }
            ClosedPoint::Infinity => r.den().deg() - r.num().deg(),
        }
    }
    pub fn render(&self) -> String {
        match self {
            ClosedPoint::Finite(p) => p.render("t"),
            ClosedPoint::Infinity => "inf".into(),
        }
    }
}
