//! Command-line front end and benchmark harness for `bolano-core`.

pub mod app;
pub mod bench;
pub mod workload;

pub use app::{run, Cli, ExitCode};
