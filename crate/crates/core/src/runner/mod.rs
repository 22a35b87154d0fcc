//! Experiment orchestration: configs, seeded trials, bound reports and output files.

mod bound;
mod config;
mod experiment;
mod output;
mod sweep;

pub use bound::{bound_report, regret_bound, BoundReport, CoverSource};
pub use config::{
    ExperimentConfig, GraphBuild, GraphSpec, GridSpec, RegretMode, DEFAULT_GROUPS,
    DEFAULT_POWER_LAW_EXPONENT, DEFAULT_TRIALS,
};
pub use experiment::{
    run_experiment, run_policy, simulate, ExperimentResult, GraphStats, PolicyResult, Prepared,
};
pub use output::{
    emit_grid, emit_results, emit_sweep, CURVES_FILE, GRID_CSV, GRID_JSON, ID_MAP_FILE,
    META_FILE, SUMMARY_FILE, SWEEP_CSV, SWEEP_JSON,
};
pub use sweep::{planted_partition_sweep, run_grid_search, with_groups, SweepRow, SweepTable};
