//! Exact computations around matroid subdivisions of hypersimplices, thin
//! Schubert cells and tropical Grassmannians.

pub mod fan;
pub mod matroid;
pub mod plucker;
pub mod poly;
pub mod polyhedral;
pub mod rational;
pub mod subdivision;
pub mod subset;
pub mod tree;
pub mod weight;

pub use fan::{Cone, FanData, FanError, IndexConvention};
pub use matroid::{Matroid, MatroidError};
pub use plucker::{AffineChart, PluckerError, PlueckerContext, PolyMatrix};
pub use poly::{Field, PolyError, Polynomial};
pub use rational::Rational;
pub use subdivision::{SubdivisionComplex, SubdivisionError};
pub use subset::GroundSubset;
pub use tree::{PhyloTree, TreeError};
pub use weight::{WeightError, WeightVector};
