//! Exact computations with silting complexes over finite-dimensional algebras.

pub mod algebra;
pub mod cli;
pub mod ar;
pub mod complex;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod linalg;
pub mod module;
pub mod report;
pub mod theorem;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
