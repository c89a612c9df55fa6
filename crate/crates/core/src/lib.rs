//! Exact homological algebra over artinian local algebras and graded
//! polynomial rings: homology, minimal resolutions, Adams towers and
//! certified bounds on levels in the derived category.

pub mod adams;
pub mod algebra;
pub mod complexes;
pub mod error;
pub mod grobner;
pub mod level;
pub mod linalg;
pub mod modules;
pub mod random;
pub mod resolutions;

pub use error::{Error, Result};
