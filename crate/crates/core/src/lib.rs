//! Numerical toolkit for meromorphic maps of the unit disk: third-order
//! complex jets, a catalog of extremal families, differential operators,
//! pointwise margin scans and a boundary-curve geometry oracle.

// Range checks are written as `!(x < bound)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod grammar;
pub mod jet;
pub mod margins;
pub mod operators;
pub mod oracle;
pub mod report;
pub mod verify;

pub use catalog::{CatalogError, FamilySpec};
pub use jet::{Jet3, JetError};
pub use num_complex::Complex64;
