//! Sparse graph operators for the sixteen discrete trigonometric transforms,
//! polynomial graph filter design on top of them, and vertex-domain filter
//! evaluation.
//!
//! Every DTT is the graph Fourier transform of a line graph. Besides the
//! Laplacian, each one is diagonalized by `N − 1` further sparse operators
//! `Z^(ℓ)` with at most two nonzeros per row. Polynomials in these operators
//! (PGFs for one operator, MPGFs for several) give cheap approximations of
//! arbitrary spectral filters.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod design;
pub mod dtt;
pub mod error;
pub mod eval;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod operators;
pub mod pruning;
pub mod scalar;
pub mod targets;
pub mod work;

pub use dtt::{basis_matrix, operator_eigenvalues, Dtt, DttKind, Spectrum};
pub use error::{Error, Result};
pub use operators::{build_operator, GridLayout, OperatorSet, SparseOperator};
pub use scalar::Real;
pub use work::{NoCount, OpCounter, WorkCounter};

pub type Matrix = matrix::DenseMatrix<f64>;
pub type Operator = SparseOperator<f64>;
pub type Operators = OperatorSet<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type Design = design::FilterDesign<f64>;
pub type Problem = design::DesignProblem<f64>;
