//! Divisors and Kummer-dual Galois elements on the projective line over
//! GF(q). Closed points stand in for geometric points; every pairing term
//! is weighted by the degree of its point, so principal divisors pair to
//! zero against constants.

mod divisor;
mod genus;
mod separator;

pub use divisor::{
    inertia_generator, kummer_pairing, pair_divisor, principal_divisor, support_size, CurveGaloisElem,
    Divisor, PointCode,
};
pub use genus::{cc_match, genus_detect, CcMatch, CurveData, CurveGaloisData, GenusReport};
pub use separator::{cu_separator, verify_separation, CuCase, CuSeparator};

use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("the zero function has no divisor")]
    Zero,
    #[error("support size {support} does not exceed {s}")]
    SupportTooSmall { support: usize, s: usize },
    #[error("level mismatch: {0:?} vs {1:?}")]
    LevelMismatch((i64, u32), (i64, u32)),
    #[error("{0} is not a unit modulo the level")]
    NotAUnit(i64),
    #[error("generator {index} is not a unit multiple of the declared partner: {detail}")]
    Inconsistent { index: usize, detail: String },
    #[error("declared correspondence is not a bijection")]
    BadBijection,
    #[error("separation failed on the subset {0:?}")]
    NotSeparating(Vec<usize>),
    #[error("ell must be a prime at least 2 and the level at least 1")]
    BadLevel,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::Gf;
    use crate::poly::{ClosedPoint, RatFunc, UPoly};

    fn rf(f: &Gf, n: &[u32], d: &[u32]) -> RatFunc {
        RatFunc::new(UPoly::new(f, n.to_vec()), UPoly::new(f, d.to_vec()))
    }

    #[test]
    fn principal_divisor_examples() {
        let f = Gf::prime(5).unwrap();
        let d = principal_divisor(&rf(&f, &[4, 1], &[3, 1])).unwrap();
        assert_eq!(d.render(), "-[t + 3] + [t + 4]");
        assert_eq!(d.degree(), 0);
        let f3 = Gf::prime(3).unwrap();
        let d = principal_divisor(&rf(&f3, &[1, 0, 1], &[1])).unwrap();
        assert_eq!(d.coeff(&ClosedPoint::Infinity), -2);
        assert_eq!(d.degree(), 0);
        assert!(principal_divisor(&rf(&f, &[3], &[1])).unwrap().is_zero());
    }

    #[test]
    fn pairing_examples() {
        let f = Gf::prime(5).unwrap();
        let g = rf(&f, &[4, 1], &[3, 1]);
        let p1 = ClosedPoint::rational(&f, 1);
        let p2 = ClosedPoint::rational(&f, 2);
        let d = inertia_generator(&f, 7, 1, &p1).unwrap();
        assert_eq!(kummer_pairing(&d, &g).unwrap(), 1);
        let delta = CurveGaloisElem::constant(&f, 7, 1, 1).unwrap();
        assert_eq!(kummer_pairing(&delta, &g).unwrap(), 0);
        let mu = CurveGaloisElem::new(&f, 7, 1, 0, vec![(p1, 2), (p2, 5)]).unwrap();
        assert_eq!(kummer_pairing(&mu, &g).unwrap(), 4);
        let inf = inertia_generator(&f, 7, 1, &ClosedPoint::Infinity).unwrap();
        assert_eq!(kummer_pairing(&inf, &RatFunc::var(&f)).unwrap(), 6);
    }

    #[test]
    fn equality_is_modulo_constants() {
        let f = Gf::prime(5).unwrap();
        let p = ClosedPoint::rational(&f, 0);
        let a = CurveGaloisElem::new(&f, 5, 2, 0, vec![(p.clone(), 3)]).unwrap();
        let b = CurveGaloisElem::new(&f, 5, 2, 7, vec![(p, 10)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(support_size(&a), 1);
        assert_eq!(support_size(&CurveGaloisElem::constant(&f, 5, 2, 4).unwrap()), 0);
    }
}
