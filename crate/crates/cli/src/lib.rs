//! Library side of the batch CLI: subcommand builders, deterministic
//! output emission, and the verification suite.

pub mod acceptance;
pub mod commands;
pub mod output;
