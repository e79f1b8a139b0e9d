//! File formats, statistical checks, the verification suite and the
//! command-line driver built on `weylpath-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod oracle;
pub mod simulate;
pub mod verify;

pub use error::{CliError, CliResult};
pub use weylpath_core as core;
