//! Chronocyclic phase-space toolkit: compass-state synthesis, SHG FROG and
//! Wigner maps, interference-cell measurements and trace ingestion.
//!
//! Units throughout are ps for time and rad/ps for angular frequency, with
//! ħ = 1, so phase-space areas compare directly against 0.5.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dataio;
pub mod error;
pub mod field;
pub mod fourier;
pub mod transforms;

pub use error::{Error, ErrorCategory, Result};
pub use num_complex::Complex64;
