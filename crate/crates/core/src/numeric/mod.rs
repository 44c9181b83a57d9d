//! Scalars, polynomials and the linear algebra kernels shared by every other module.

pub mod matrix;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod scalar;

pub use matrix::{DenseMatrix, RowBasis};
pub use poly::UniPoly;
pub use resultant::{sylvester_matrix, sylvester_resultant};
pub use roots::{multiset_distance, poly_roots, poly_roots_with, RootOptions};
pub use scalar::{
    exact, format_rational, gauss, parse_rational, rational_from_f64, ApproxComplex, ExactComplex, Rational,
    RealScalar, Scalar,
};
