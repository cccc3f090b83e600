//! Command-line front end: configuration, report emission and dispatch.

pub mod commands;
pub mod config;
pub mod emit;

pub use commands::{execute, Cli, Outcome};
pub use config::{parse_config, parse_config_deferred, ConfigError, RunConfig, RunLimits};
