//! Exact algebra for degeneracy loci of skew-symmetric matrices of linear
//! forms: apolarity, Pfaffians, the correspondence between nondegenerate
//! forms and skew syzygy matrices, and the cohomology bookkeeping for the
//! associated Grassmannian families.

pub mod apolarity;
pub mod cohomology;
pub mod combinat;
pub mod correspondence;
pub mod degeneracy;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod skew;

pub use error::{Error, ErrorKind, Result};
pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use linalg::ExactMatrix;
pub use poly::{Alphabet, AlphabetKind, GradedSlice, HomogPoly};
pub use skew::{LinearPencilMatrix, SkewLinearMatrix};
