//! Batch front end: config files, the run pipeline, traces, and lineage
//! logs.

mod config;
mod error;
mod runner;
mod trace;

pub use config::{load_config, parse_domain, AdaptationSchedule, SystemSpec};
pub use error::HarnessError;
pub use runner::{adapt_spec, run_spec, validate_rule_file, AdaptSummary, RunSummary};
pub use trace::{parse_trace_line, render_trace, trace_diff, write_trace, TraceDiff};
