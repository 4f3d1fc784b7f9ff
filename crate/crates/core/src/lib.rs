//! Exact lattice arithmetic, isometry entropy and null-entropy group analysis
//! for hyperbolic lattices.

pub mod arith;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod group;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod poly;
pub mod spectral;

pub use error::{Error, Result};
pub use lattice::{Classification, Lattice, LatticeVector, QuotientData, Signature};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use spectral::{EntropyValue, Isometry};
