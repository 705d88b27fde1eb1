//! Constant symplectic 2-groupoids over Q.
//!
//! This crate constructs, verifies, and interconverts three kinds of objects,
//! all with exact rational arithmetic:
//!
//! * linear 2-groupoids and their 3-term chain complexes (the Dold-Kan
//!   correspondence in low degrees),
//! * constant multiplicative 2-forms on the 2-simplex space, giving constant
//!   symplectic 2-groupoids and their classification by tuples
//!   `(W1, W0, <.,.>, boundary, r)`,
//! * constant Courant algebroids with polynomial sections, together with the
//!   correspondence between constant Dirac structures and wide Lagrangian
//!   sub-2-groupoids.
//!
//! Every identity is checked as an exact matrix or polynomial equation; there
//! is no floating point anywhere.

pub mod bridge;
pub mod courant;
pub mod dirac;
pub mod doldkan;
mod error;
pub mod exactla;
pub mod forms;
mod report;
pub mod sample;

pub use error::{Error, Result};
pub use report::{Check, Report};
