//! Instances, random generation, the acceptance suite and the command-line
//! front end.

pub mod app;
pub mod generate;
pub mod instance;
pub mod suite;
