//! Command-line front end and file formats for `dualfunc-core`.

pub mod cli;
pub mod format;
pub mod parallel;
pub mod parse;

pub use cli::{run, Outcome};
