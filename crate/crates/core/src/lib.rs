//! Desk-scale computational workbench: flag maps and c-pairs on finite
//! F_p-spaces, valuations on rational function fields, the Kummer pairing on
//! the projective line, truncated l-adic divisors on the plane, and
//! axiomatic projective structures.

pub mod ffcore;
pub mod curvegal;
pub mod flagmap;
pub mod ladicdiv;
pub mod lattice;
pub mod poly;
pub mod projgeom;
pub mod valuation;
