//! Finite fields GF(p^e), coordinate spaces over them, and enumeration of
//! projective points and subspaces in a fixed lexicographic order.

mod field;
mod space;

pub use field::{conway_polynomial, is_prime, FieldElem, Gf};
pub use space::{
    combine, enumerate_proj_points, enumerate_subspaces, gaussian_binomial, in_subspace,
    normalize, nullspace, rref, solve, span, PointIndex, ProjPoint, Subspace, VecSpace, Vector,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no irreducible polynomial on file for GF({p}^{e})")]
    UnsupportedExtension { p: u32, e: u32 },
    #[error("vector spaces must have dimension at least 1")]
    ZeroDimension,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Gf {
        Gf::prime(p).unwrap()
    }

    #[test]
    fn point_counts() {
        for (p, n, want) in [(3, 2, 4), (2, 3, 7), (5, 2, 6)] {
            let s = VecSpace::new(gf(p), n).unwrap();
            assert_eq!(enumerate_proj_points(&s).len(), want);
        }
    }

    #[test]
    fn points_are_sorted_and_normalized() {
        let s = VecSpace::new(gf(3), 2).unwrap();
        let pts: Vec<Vector> = enumerate_proj_points(&s).into_iter().map(|p| p.0).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn subspace_counts() {
        let s = VecSpace::new(gf(3), 3).unwrap();
        assert_eq!(enumerate_subspaces(&s, 3).len(), 1);
        assert_eq!(enumerate_subspaces(&s, 2).len(), 13);
        let s = VecSpace::new(gf(2), 3).unwrap();
        assert_eq!(enumerate_subspaces(&s, 2).len(), 7);
        assert_eq!(enumerate_subspaces(&s, 0).len(), 1);
    }

    #[test]
    fn span_examples() {
        let f = gf(3);
        assert_eq!(span(&f, &[vec![1, 0], vec![0, 1]], 2), Subspace::whole(2));
        let l = span(&f, &[vec![1, 1]], 2);
        assert!(in_subspace(&f, &[2, 2], &l));
        assert!(!in_subspace(&f, &[1, 2], &l));
        assert_eq!(span(&f, &[], 2).dim(), 0);
    }

    #[test]
    fn extension_field_tables() {
        for (p, e) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3)] {
            let f = Gf::new(p, e).unwrap();
            let q = f.q();
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            // the table polynomial is primitive: its root generates the unit group
            assert_eq!(f.multiplicative_order(f.generator()), (q - 1) as u64, "{p}^{e}");
        }
    }

    #[test]
    fn intersection_of_planes() {
        let f = gf(3);
        let a = span(&f, &[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = span(&f, &[vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert_eq!(a.intersect(&f, &b), span(&f, &[vec![0, 1, 0]], 3));
    }

    #[test]
    fn solve_and_nullspace() {
        let f = gf(5);
        let m = vec![vec![1, 2, 3], vec![2, 1, 1]];
        let ker = nullspace(&f, &m, 3);
        assert_eq!(ker.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ker[0]).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert_eq!(dot, 0);
        }
        let x = solve(&f, &m, &[1, 2], 3).unwrap();
        assert_eq!(combine(&f, &x, &[vec![1, 2], vec![2, 1], vec![3, 1]], 2), vec![1, 2]);
    }
}
