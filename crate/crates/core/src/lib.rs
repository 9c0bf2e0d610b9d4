//! Exact computer algebra for color Lie algebras and their twisted
//! enveloping algebras U_omega(L).
//!
//! All arithmetic happens in a cyclotomic field Q(z_n); there is no floating
//! point anywhere, so ranks and cohomology dimensions are exact.

pub mod catalog;
pub mod cohomology;
pub mod colorlie;
pub mod enveloping;
pub mod error;
pub mod exec;
pub mod file;
pub mod grading;
pub mod hopf;
pub mod linalg;
pub mod lincomb;
pub mod repmodule;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use exec::Exec;
pub use scalar::CycScalar;
