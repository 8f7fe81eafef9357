//! Exact computation on the Berkovich projective line over a p-adic base
//! field, and non-Archimedean dynamics on it.

pub mod berkline;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod green;
pub mod harmonic;
pub mod morspace;
pub mod tree;

pub use error::{Error, Result};
