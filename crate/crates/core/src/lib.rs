//! Exact structure-constant computations for pre-Lie 2-algebras, Lie
//! 2-algebras, crossed modules, O-operators and 2-graded classical
//! Yang–Baxter solutions. All arithmetic is over ℚ.

pub mod categorical;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graded;
pub mod lie2;
pub mod linalg;
pub mod o_operator;
pub mod prelie;
pub mod prelie2;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod ybe;

pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
pub use scalar::{Rational, Vector};
pub use tensor::{MultiMap, Space};
