//! Configuration-driven reproductions of the gain, convergence and BER experiments.

mod config;
mod results;
mod runner;
mod seed;

pub use config::{
    default_config, load_config, parse_config, parse_config_with, DopplerSpec, ExperimentConfig, GridConfig,
    LinkConfig, Overrides, Policy, PowerSpec, Scenario, TdlConfig,
};
pub use results::{config_from_csv, emit_results, read_rows, ResultRow, ResultTable, HEADER};
pub use runner::{
    binomial_stderr, run, run_ber_sweep, run_convergence, run_gain_sweep, run_tdl, MeanEstimate, REFERENCE_OPTIONS,
};
pub use seed::{stream_id, substream_rng, trial_rng, Substream};
