//! Scenario files, experiment drivers and persistence for the `logeuler`
//! command line.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod parallel;
pub mod scenario;

pub use config::{DataSpec, Scenario};
pub use error::CliError;
pub use scenario::{execute_scenario, run_scenario};
