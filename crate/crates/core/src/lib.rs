//! Exact linear algebra over the rationals for finite-dimensional ternary
//! bracket algebras: the algebras themselves, the derivation-type map
//! spaces attached to them, a tensor-style one-dimension extension, kernel
//! and coboundary computations, and torus weight decompositions.
//!
//! Everything is computed with arbitrary-precision rational arithmetic;
//! no floating point appears anywhere.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod eigen;
pub mod extension;
pub mod io;
pub mod map_spaces;
pub mod matrix;
pub mod scalar;
pub mod subspace;
pub mod torus;

pub use algebra::{Algebra, AlgebraError, BracketTable, FiViolation};
pub use matrix::{LinalgError, Matrix};
pub use scalar::{frac, int, parse_scalar, Scalar};
pub use subspace::Subspace;
