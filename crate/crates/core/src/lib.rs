//! Exact spectral gaps of small reversible Markov chains built from weighted
//! Cayley graphs of symmetric groups and their double-coset quotients.
//!
//! The crate covers random walks, the interchange process, the generalized
//! exclusion process and block shuffles, together with brute-force checkers
//! for the structural hypotheses relating them.


pub mod coset;
pub mod error;
pub mod graph;
pub mod perm;
pub mod processes;

pub mod tol;
pub mod verify;



pub use coset::{DoubleCosetPartition, QuotientResult};
pub use error::{Error, Result};
pub use graph::{SpectralReport, StationaryMeasure, WeightedDigraph};
pub use perm::{Permutation, Subgroup, WeightedGroup};
