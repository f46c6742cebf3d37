//! File formats, built-in corpus, versioned reports and the subcommands
//! behind the `skewfield` binary.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod format;
pub mod report;

pub use error::InputError;
pub use report::{RunReport, Verdict};
