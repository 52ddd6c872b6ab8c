pub mod additive;
pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod function_field;
pub mod riemann_roch;
pub mod subspace;

pub use error::{Error, Result};
