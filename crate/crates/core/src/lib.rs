//! Exact arithmetic for charge-conserving-with-glue (CCwg) matrices: words and
//! charges, word-labelled matrices, braid anomalies and tower representations,
//! image algebras with their radicals and commutants, and a catalog of
//! Yang–Baxter solutions.

pub mod algebra;
pub mod braid;
pub mod catalog;
pub mod error;
pub mod exactmat;
pub mod field;
pub mod linalg;
pub mod suites;
pub mod tables;
pub mod words;

pub use error::{Error, Result};
pub use exactmat::WordMatrix;
pub use field::{FieldTag, Scalar};
pub use words::{Composition, PositionClass, Rank, Word};
