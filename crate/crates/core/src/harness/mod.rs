//! Experiment orchestration: noise-variance estimation, seeded sweeps and
//! CSV output.

mod config;
mod csv_io;
mod noise;
mod seed;
mod sweep;

pub use config::{ExperimentConfig, ExperimentFile, Mode, PolicyName};
pub use csv_io::{read_csv, write_csv, write_csv_to, COLUMNS};
pub use noise::estimate_noise_variance;
pub use seed::trial_rng;
pub use sweep::{build_link, default_cp_len, run_sweep, run_sweep_with_threads, SweepRow, SweepTable};
