//! Document format and command plumbing for the `cs2g` binary, exposed as a
//! library so the golden tests can drive parsing and serialization directly.

pub mod docs;
pub mod ops;
