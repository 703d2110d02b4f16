//! Matroid polytopes and their regular subdivisions.

mod dual_graph;
mod polytope;
mod regular;
mod volume;

pub use dual_graph::{center_decomposition, common_vertex, dual_graph, CenterDecomposition, DualGraph, Leaf};
pub use polytope::{
    facets, ggms_is_matroid_polytope, matroid_polytope_vertices, nondegenerate_flats, polytope_dim,
    polytope_edges, FacetDescription,
};
pub use regular::{regular_subdivision, Cell, CellCertificate, SubdivisionComplex};
pub use volume::{normalized_volume, pulling_triangulation};

use thiserror::Error;

use crate::matroid::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubdivisionError {
    #[error("no vertices given")]
    EmptyInput,
    #[error("cell {0} is not a matroid polytope")]
    NonMatroidCell(usize),
    #[error("weight vector has shape {found:?}, expected {expected:?}")]
    WeightShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("center decomposition needs at least 3 cells, got {0}")]
    TooFewCells(usize),
    #[error("every cell is a leaf of the dual graph")]
    NoCenter,
    #[error("merged center is not a matroid: {0}")]
    CenterNotMatroid(MatroidError),
}
