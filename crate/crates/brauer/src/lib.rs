//! Command-line driver, JSON formats, corpus generation and verification
//! reports on top of `brauer-core`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod json;
pub mod literal;
pub mod report;

pub use error::CliError;
