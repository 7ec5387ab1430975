//! Solvers for the recoverable spanning tree problem and its robust
//! variants under interval uncertainty.

pub mod cli;
pub mod error;
pub mod graph;
pub mod inc;
pub mod mst;
pub mod oracle;
pub mod rec;
pub mod robust;

pub use error::{Error, Result};
pub use graph::{Cost, EdgeId, Graph, NodeId, Tree};

/// Exact rational number used wherever a value may be fractional.
pub type Rational = num_rational::BigRational;

pub fn rational(v: Cost) -> Rational {
    Rational::from_integer(v.into())
}
