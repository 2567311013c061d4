//! Integral monodromy of rank-four symplectic local systems with maximal
//! unipotent monodromy at the origin: classification of the real monodromy
//! groups, their invariant lattices, period series and reflexive polytopes.

pub mod error;
pub mod exact;
pub mod lattices;
pub mod monodromy;
pub mod periods;
pub mod polytopes;

pub use error::{Error, Result};
