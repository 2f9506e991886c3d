//! Scenario files, partitioned sweeps and plot-ready CSV/JSON output for the
//! secrecy-region computations in `mawc-core`.

pub mod commands;
pub mod error;
pub mod output;
pub mod parallel;
pub mod scenario;

pub use commands::{run_figure, run_scenario, Figure};
pub use error::{CliError, CliResult, EXIT_CAP, EXIT_OK, EXIT_VALIDATION};
pub use scenario::{load_scenario, parse_scenario, Scenario, ScenarioFile};
