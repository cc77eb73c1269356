//! Finite categories, truncated simplicial sets and finite-set-valued
//! diagrams, with exact colimits, homology, and tri-valued checks of
//! `n`-cofinality and `n`-siftedness.

pub mod cofinality;
pub mod colimit;
pub mod delta;
pub mod diagram;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod par;
pub mod random;
pub mod sset;
pub mod topology;

pub use error::{Error, Result};
