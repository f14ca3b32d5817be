//! Exact computations with finite-dimensional coalgebras, their dual
//! algebras and the corings they induce.

pub mod algebra;
pub mod coalgebra;
pub mod coring;
pub mod coseparability;
pub mod dorroh;
pub mod dual;
pub mod error;
pub mod format;
pub mod linalg;
pub mod validation;

pub use error::{Error, Result};
