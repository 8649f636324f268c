//! Numerical verification of generalised WDVV equations for rational and
//! trigonometric prepotentials, their Legendre transforms, and the parameter
//! maps between families.

pub mod equivalence;
pub mod error;
pub mod families;
pub mod legendre;
pub mod linalg;
pub mod oracle;
pub mod sampling;
pub mod specfn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
