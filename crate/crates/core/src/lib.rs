//! Exact enumeration, uniform sampling and limit-shape analysis of doubly
//! alternating Baxter permutations.
//!
//! The crate is organized bottom-up:
//!
//! * [`catalan`]: exact, log-space and scaled Catalan numbers, partial
//!   Catalan convolutions and a Dyck-path counting oracle;
//! * [`perm`]: permutation primitives, the Baxter/alternating predicates and
//!   an exhaustive enumerator for small lengths;
//! * [`enumerate`]: `B(m,i,j)` by closed formula and by recurrence, full
//!   count/probability matrices and the corner probabilities;
//! * [`sample`]: exact-structure uniform sampling through the recursive
//!   Catalan decomposition;
//! * [`surface`]: the limit density and its reflections, grids and finite-`m`
//!   slice comparisons;
//! * [`matrix`]: the square table type with its CSV/JSON formats.

pub mod catalan;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod perm;
pub mod quad;
pub mod sample;
pub mod surface;

pub use catalan::BigCount;
pub use error::{Error, Result};
pub use matrix::{CountMatrix, Mode};
pub use perm::Permutation;
