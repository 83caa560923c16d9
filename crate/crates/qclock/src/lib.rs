//! Scenario files, CSV output and parallel sweeps on top of `qclock-core`.

pub mod csv;
pub mod document;
pub mod error;
pub mod parallel;

pub use csv::{emit_csv, format_number, parse_csv, to_csv_string, write_csv, HEADER};
pub use document::{
    parse_scenario, scenario_to_document, ParseOptions, ParsedScenario, SCHEMA_VERSION,
};
pub use error::{CliError, DocumentError};
pub use parallel::run_sweep_parallel;
