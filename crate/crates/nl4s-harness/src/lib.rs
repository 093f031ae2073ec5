//! Experiment harness for the biharmonic NLS spectral lab: TOML-configured
//! runs, binary field snapshots, CSV observable series, and hashed JSON
//! manifests so that any run can be checked and reproduced bit for bit.

pub mod config;
pub mod experiments;
pub mod manifest;
pub mod snapshot;

pub use config::{validate_config, ExperimentKind, RunConfig};
pub use experiments::{run_experiment, RunOutput};
pub use manifest::RunManifest;
