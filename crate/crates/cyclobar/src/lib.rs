//! Front end for `cyclobar-core`: configuration, the persistent Witt
//! polynomial cache, table rendering and the command implementations
//! behind the `cyclobar` binary.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;
pub mod verify;

pub use cache::WittPolynomialCache;
pub use config::{Format, RunConfig};
pub use error::CliError;
