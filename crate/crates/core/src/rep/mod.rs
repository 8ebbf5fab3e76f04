//! Representations of generalized double quivers over exact fields.
//!
//! A representation assigns a space `K^{n_v}` to each vertex and a matrix to each
//! arrow. Vectors are columns: the matrix of an arrow `s -> t` has `n_t` rows and
//! `n_s` columns, and a path `a_1 a_2 ... a_k` acts as `M_{a_k} ... M_{a_1}`.

mod dihedral;
mod field;
mod matrix;
mod representation;
mod witness;

use thiserror::Error;

use crate::quiver::QuiverError;

pub use dihedral::{decompose_dihedral, dihedral_simples, eigendecompose_pair, DihedralDecomposition, DihedralSimple, EigenBlock, PairDecomposition};
pub use field::{parse_poly, Field, Scalar};
pub use matrix::{Matrix, Subspace};
pub use representation::{
    are_isomorphic, check_representation, generated_subrep, has_complement, hom_space, is_simple, CheckReport, Representation, Simplicity,
    SubRep,
};
pub use witness::{extend_by_pendant, simple_family_member, witness_nonsemisimple, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("bad field modulus {0}: {1}")]
    BadModulus(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("relations not satisfied at arrow {0}")]
    RelationsNotSatisfied(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("polynomial {0} has a repeated root")]
    RepeatedRoot(String),
    #[error("polynomial {0} vanishes at zero")]
    ZeroRoot(String),
    #[error("roots of {0} are not all in the field")]
    RootsOutsideField(String),
    #[error("subspaces are not closed under arrow {0}")]
    NotArrowClosed(String),
    #[error("zero representation")]
    ZeroRepresentation,
    #[error("diagram is in the semisimple class: no witness exists")]
    SemisimpleDiagram,
    #[error("diagram has no pair of heavy edges on a tree")]
    NotTwoHeavy,
    #[error("parameter {0} collides with an eigenvalue parameter")]
    ParameterCollision(String),
    #[error("weight {0} too small")]
    WeightTooSmall(String),
    #[error("simples {0} and {1} are isomorphic")]
    IsomorphicSimples(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representations live on different quivers")]
    DifferentQuivers,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}
