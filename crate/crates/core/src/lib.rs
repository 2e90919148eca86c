//! Exact Riesz pseudonorms and unbounded locally solid topologies over
//! computable vector lattices.

pub mod convergence;
pub mod dualpair;
pub mod error;
pub mod lattice;
pub mod par;
pub mod pseudonorm;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod scenarios;
pub mod syntax;
pub mod topology;

pub use error::{Error, Result};
pub use lattice::{LatticeElement, NormTag, SeqElement, Space};
pub use par::Execution;
pub use pseudonorm::PseudonormExpr;
pub use scalar::Scalar;
