//! Exact polyhedral computations: linear algebra and double description.

pub mod dd;
pub mod linalg;

pub use dd::{cone_generators, hull_facets, ConeGenerators, HullFacets, TightSet};
