//! Command-line front end for `squeezelab-core`: configuration, runners and
//! CSV/JSON/SVG output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod range;
pub mod svg;

pub use commands::{execute, Outcome};
pub use config::RunConfig;
pub use error::{CliError, Result};
