//! Skew polynomial rings, left ideals and the Amitsur-Small extension condition.

pub mod amitsur;
pub mod center;
pub mod cli;
pub mod error;
pub mod leftideal;
pub mod linalg;
pub mod module;
pub mod monomials;
pub mod orepoly;
pub mod pipeline;
pub mod scalars;
pub mod skewring;

pub use error::{Error, Result};
