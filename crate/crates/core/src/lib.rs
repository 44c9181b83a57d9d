//! Moments of polygonal measures, their inverse problem, and the symmetric
//! group action on relabeled vertex configurations.

pub mod error;
pub mod inverse;
pub mod moments;
pub mod numeric;
pub mod polygon;
pub mod sample;
pub mod symmetry;
pub mod triangle;

pub use error::{Error, Result};
pub use numeric::{ApproxComplex, ExactComplex, Rational, Scalar};
pub use polygon::{Mode, VertexConfig};
