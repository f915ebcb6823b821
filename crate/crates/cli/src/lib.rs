//! Configuration, experiment dispatch and CSV output for the `imethod-lab`
//! binary.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{
    parse_config, parse_with_overrides, DataSpec, Experiment, ExperimentConfig, Location,
};
pub use error::LabError;
pub use run::{initial_data, run, RunOutput};
