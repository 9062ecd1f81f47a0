//! Experiment registry, sweep engine, and table emitters behind the `nuqr`
//! binary.

mod error;
pub mod emit;
pub mod registry;
pub mod sweep;

pub use error::Error;
pub use registry::{load_experiments, load_experiments_file, ExperimentRecord, Registry};
pub use sweep::{
    run_density_map, run_sweep, single_point, GridSpec, MapConfig, MeasureColumn, ResultRow,
    SweepConfig, SweepTable, SweepTarget, SweepVariable,
};
