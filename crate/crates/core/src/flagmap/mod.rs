//! Homogeneous maps on the projectivization of a finite coordinate space:
//! flag maps, logarithmic maps, c-pairs and their flag combinations.
//!
//! Values live in Z or in Z/l^m; the truncated ring stands in for Z_l.

mod cpair;
mod flag;
mod map;

pub use cpair::{
    find_flag_combination, is_c_pair, maximal_cpair_cliques, projective_line_mod, CPairReport,
    CPairWitness, ComboOutcome,
};
pub use flag::{
    find_flag, first_non_flag_line, functional_equation_flag, h_reduction_holds, hyperplanes,
    is_flag_dim2, is_flag_map, is_logarithmic, Flag, LogReport, H_REDUCTION_MAX_VALUES,
};
pub use map::{Domain, HomogeneousMap, Line, Ring};

use thiserror::Error;

use crate::ffcore::Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("value table has {got} entries, domain has {want} points")]
    TableSize { want: usize, got: usize },
    #[error("the zero vector has no value")]
    ZeroVector,
    #[error("two representatives of {0:?} carry different values")]
    Inhomogeneous(Vector),
    #[error("no value given for {0:?}")]
    Missing(Vector),
    #[error("expected a 2-dimensional subspace, got dimension {0}")]
    NotAPlane(usize),
    #[error("{0} distinct values exceed the reduction guard")]
    TooManyValues(usize),
    #[error("maps live on different domains")]
    DomainMismatch,
    #[error("maps take values in different rings")]
    RingMismatch,
    #[error("flag combinations are searched over Z/l^m only")]
    NeedsTruncatedRing,
}
