use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    Empty,

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid OFDM configuration: {0}")]
    InvalidConfig(String),

    #[error("channel length {taps} exceeds {limit}")]
    ChannelTooLong { taps: usize, limit: usize },

    #[error("half-window L={l} out of range for K={k} (need {needed} <= K)")]
    WindowOutOfRange { l: usize, k: usize, needed: usize },

    #[error("negative noise variance {0}")]
    NegativeVariance(f64),

    #[error("threshold must be positive, got {0}")]
    InvalidThreshold(f64),

    #[error("invalid channel profile: {0}")]
    InvalidProfile(String),

    #[error("tap delay {delay} does not fit in K={k}")]
    DelayOutOfRange { delay: usize, k: usize },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("singular system")]
    Singular,

    #[error("degenerate observation: Gram matrix condition number {condition:e}")]
    Degenerate { condition: f64 },

    #[error("channel estimate too small on subcarrier {subcarrier}")]
    EqualizerSingular { subcarrier: usize },

    #[error("bit length {len} is not a multiple of {multiple}")]
    BitLength { len: usize, multiple: usize },

    #[error("unknown estimator `{0}`")]
    UnknownEstimator(String),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
