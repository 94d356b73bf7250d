//! Config parsing, sweep evaluation and CSV/JSON output for the `magsup`
//! command-line tool.

pub mod app;
pub mod config;
pub mod emit;
pub mod presets;
pub mod run;

pub use app::run_cli;
pub use config::{
    parse_config, parse_config_for, ConfigError, Format, RunConfig, Scale, Scheme, SeriesSpec, SweepSpec,
};
pub use emit::emit;
pub use run::{run, RunError, SweepResult};
