pub mod catalog;
pub mod enumerator;
pub mod error;
pub mod formulas;
mod matcher;
pub mod nu;
pub mod perm;
pub mod symmetry;

pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation, Word};
