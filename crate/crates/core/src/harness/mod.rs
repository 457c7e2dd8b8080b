//! Named experiments E1 to E7: configs, execution, assertions and run
//! records (`results.json` plus a `statistic,M,H,value` ladder CSV).

mod config;
mod record;
mod run;

pub use config::{
    Assertions, ExperimentConfig, ExperimentKind, Limits, OutputSpec, StatisticParams, DEFAULT_MAX_INDEX,
};
pub use record::{config_hash, read_ladder_csv, version_string, write_ladder_csv, CheckOutcome, LadderRow, RunRecord};
pub use run::{exit_code, run, RunOptions};
