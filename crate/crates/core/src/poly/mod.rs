//! Polynomials and rational functions over GF(q) in one variable t or two
//! variables x, y, with factorization.

mod bfactor;
mod bpoly;
mod factor;
mod place;
mod ratfunc;
mod upoly;

pub use bfactor::{expand, factor2, plane_divisor, PlaneCurve};
pub use bpoly::BPoly;
pub use factor::{factor, is_irreducible, monic_irreducibles};
pub use place::ClosedPoint;
pub use ratfunc::{RatFunc, RatFunc2};
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no factorization")]
    Zero,
    #[error("polynomial is not irreducible")]
    Reducible,
    #[error("a curve needs a nonconstant equation")]
    NotACurve,
    #[error("leftover factor of degree {0} is beyond the certified factorization range")]
    FactorDegree(usize),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::Gf;

    fn u(f: &Gf, c: &[u32]) -> UPoly {
        UPoly::new(f, c.to_vec())
    }

    #[test]
    fn univariate_factorization_roundtrip() {
        for q in [3u32, 4, 5, 7, 9] {
            let f = Gf::of_order(q).unwrap();
            let a = u(&f, &[1, 2, 0, 1]).mul(&u(&f, &[2, 1])).mul(&u(&f, &[2, 1])).mul(&u(&f, &[1, 0, 1, 0, 1]));
            let fs = factor(&a);
            let back = fs.iter().fold(UPoly::one(&f), |acc, (p, m)| acc.mul(&p.pow(*m as u64)));
            assert_eq!(back, a.monic(), "q = {q}");
            for (p, _) in &fs {
                assert!(p.is_monic());
                // no roots below degree 2 means nothing to split for quadratics and cubics
                if p.degree() <= 3 && p.degree() >= 2 {
                    assert!(p.roots().is_empty());
                }
            }
        }
    }

    #[test]
    fn pth_powers_are_split() {
        let f = Gf::prime(3).unwrap();
        // (t + 1)^3 (t^2 + 1)^6
        let a = u(&f, &[1, 1]).pow(3).mul(&u(&f, &[1, 0, 1]).pow(6));
        assert_eq!(factor(&a), vec![(u(&f, &[1, 1]), 3), (u(&f, &[1, 0, 1]), 6)]);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over GF(q)
        let f = Gf::prime(3).unwrap();
        assert_eq!(monic_irreducibles(&f, 1).len(), 3);
        assert_eq!(monic_irreducibles(&f, 2).len(), 3);
        assert_eq!(monic_irreducibles(&f, 3).len(), 8);
        let f = Gf::of_order(4).unwrap();
        assert_eq!(monic_irreducibles(&f, 2).len(), 6);
    }

    #[test]
    fn bivariate_gcd_and_division() {
        let f = Gf::prime(5).unwrap();
        let a = BPoly::linear(&f, 1, 1, 1);
        let b = BPoly::from_terms(&f, &[(2, 0, 1), (0, 1, 1)]);
        let c = BPoly::from_terms(&f, &[(1, 1, 1), (0, 0, 2)]);
        let g = a.mul(&b).gcd(&a.mul(&c));
        assert_eq!(g, a.normalized());
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.mul(&b).add(&BPoly::one(&f)).div_exact(&b), None);
    }

    #[test]
    fn bivariate_factorization() {
        let f = Gf::prime(7).unwrap();
        let x = BPoly::x(&f);
        let y = BPoly::y(&f);
        let l = BPoly::linear(&f, 2, 1, 3);
        let u = x.add(&y.scale(2)); // x + 2y
        let conic = u.mul(&u).add(&BPoly::one(&f)); // irreducible over GF(7)
        let a = x.pow(2).mul(&l).mul(&conic).mul(&conic).mul(&y.add(&BPoly::one(&f)));
        let fs = factor2(&a).unwrap();
        assert_eq!(expand(&f, &fs).normalized(), a.normalized());
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().any(|(p, m)| *p == conic.normalized() && *m == 2));
    }

    #[test]
    fn divisor_of_function_has_degree_zero() {
        let f = Gf::prime(7).unwrap();
        let x = RatFunc2::x(&f);
        let y = RatFunc2::y(&f);
        let g = x.mul(&x).add(&y).div(&x.add(&RatFunc2::constant(&f, 1)).mul(&y));
        let d = plane_divisor(&g).unwrap();
        let deg: i64 = d.iter().map(|(c, m)| c.degree() as i64 * m).sum();
        assert_eq!(deg, 0);
    }

    #[test]
    fn ratfunc_compose() {
        let f = Gf::prime(3).unwrap();
        let t = RatFunc::var(&f);
        let t2 = t.mul(&t);
        assert_eq!(t2.compose(&t2), t2.mul(&t2));
        let m = t.add(&RatFunc::constant(&f, 1)).div(&t.sub(&RatFunc::constant(&f, 1)));
        assert_eq!(m.compose(&m).degree(), 1);
    }
}
