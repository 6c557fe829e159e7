//! Command-line front end for `acluster-core`: object specs, JSON formats,
//! subcommands and the acceptance suite behind `verify`.

use std::fmt;

pub mod cli;
pub mod formats;
pub mod spec;
pub mod verify;

pub use cli::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BREACH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Core(acluster_core::Error),
    Usage(String),
    Io(String),
    /// A computed identity or invariant did not hold.
    Breach(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_invariant_breach() => EXIT_BREACH,
            CliError::Core(_) | CliError::Io(_) => EXIT_DOMAIN,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Breach(_) => EXIT_BREACH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Io(s) => write!(f, "{s}"),
            CliError::Breach(s) => write!(f, "invariant violated: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<acluster_core::Error> for CliError {
    fn from(e: acluster_core::Error) -> Self {
        CliError::Core(e)
    }
}
