//! Experiment harness for the `fraclap-core` library: configuration files,
//! named profiles, parameter sweeps, slope fits and CSV/SVG output.

pub mod config;
pub mod emit;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod profiles;
pub mod report;

pub use config::{parse_config, parse_config_str, ExperimentConfig, ExperimentKind};
pub use error::{LabError, Result};
pub use experiments::{Experiment, Registry};
pub use report::{write_report, Report};
