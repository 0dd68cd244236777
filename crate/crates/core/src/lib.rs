//! Tools for multicolor list Ramsey numbers of uniform hypergraphs.
//!
//! * [`hypergraph`]: r-uniform hypergraphs, degrees, weak chromatic number,
//!   r-partiteness and vertex duplication.
//! * [`morphism`]: homomorphism and copy search, monochromatic-copy checks.
//! * [`extremal`]: exact small Turán numbers, density tables, m(H) and
//!   Zykov symmetrization.
//! * [`construct`]: randomized list colorings avoiding a pattern, via the
//!   union bound (random relabelings of an extremal graph) and via
//!   Moser–Tardos resampling of random homomorphisms into a target graph.
//! * [`decide`]: exhaustive decision of the list-Ramsey property for
//!   concrete instances, plus DIMACS export.
//! * [`bounds`]: closed-form lower and upper bound evaluators.

pub mod bounds;
pub mod construct;
pub mod decide;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod lists;
pub mod morphism;
mod numeric;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, Vertex, VertexPartition};
pub use lists::{Color, Coloring, ListAssignment};
pub use search::Budget;
