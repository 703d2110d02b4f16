//! Plücker relations, thin Schubert cells in projective and affine
//! coordinates, Jacobian certificates and `t`-adic valuations.

mod chart;
mod relations;
mod valuation;

use thiserror::Error;

pub use chart::{
    affine_chart, affine_ideal_generators, affine_minor_generators, jacobian_minors, lambda_ij, unit_witness,
    unit_witnesses, AffineChart, AffinePresentation, Elimination, UnitCertificate,
};
pub use relations::{
    admissible_pairs, face_quadric_mismatches, limit_ideal_generators, plucker_sign, quadric, reduce_by_matroid,
    thin_schubert_generators, PlueckerContext,
};
pub use valuation::{pluecker_valuation, t_ring, PolyMatrix};

use crate::poly::PolyError;
use crate::subset::GroundSubset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PluckerError {
    #[error("index {i} must lie in {mu} and outside {lambda}")]
    BadIndex {
        i: usize,
        lambda: GroundSubset,
        mu: GroundSubset,
    },
    #[error("index tuple {0:?} does not fit the Plücker ring")]
    BadTuple(Vec<usize>),
    #[error("{0} is not a basis of the matroid")]
    NotABasis(GroundSubset),
    #[error("{gens} generators but only {vars} variables")]
    MoreGensThanVars { gens: usize, vars: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("the maximal minor on columns {0} vanishes identically")]
    SingularMinor(GroundSubset),
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("cell {0} is not a matroid polytope")]
    NonMatroidCell(usize),
    #[error("polynomial is not in the Plücker ring of the matroid")]
    ContextMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
