//! Experiment registry, configuration, reports and persistence for the
//! `lightchaos` command-line tool.

pub mod config;
pub mod experiments;
pub mod persist;
pub mod registry;
pub mod report;

pub use config::{Config, RunConfig};
pub use experiments::{run_experiment, run_many};
pub use registry::{lookup, registry, ExperimentSpec};
pub use report::{render_report, verify_claims, Format, RunReport};
