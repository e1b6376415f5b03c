//! Experiment description. Files are TOML, one experiment per file; command
//! line flags override file values field by field.
//!
//! ```toml
//! mode = "mse"              # or "ber"
//! scenario = "tu6"          # awgn | rayleigh1 | tu6 | path/to/profile.prof
//! k = 64
//! snr_db = [0, 5, 10, 15]
//! trials = 2000
//! estimators = ["ml", "lmmse", "sure-linear", "sure-let"]
//! seed = 1
//! sigma2 = "true"           # or "est"
//! threshold_policy = "fixed"  # or "grid"
//! l = 1
//! blank_carriers = 500
//! out = "results.csv"
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::comms::{DEFAULT_BLANK_CARRIERS, DEFAULT_DATA_SYMBOLS};
use crate::error::{Error, Result};
use crate::estimators::{EstimatorSpec, Sigma2Source, ThresholdPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Channel-estimation error only.
    #[default]
    Mse,
    /// Full coded link with bit-error counting (MSE is recorded as well).
    Ber,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mse => "mse",
            Self::Ber => "ber",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyName {
    #[default]
    Fixed,
    Grid,
}

impl FromStr for PolicyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Self::Fixed),
            "grid" => Ok(Self::Grid),
            other => Err(Error::InvalidExperiment(format!("threshold policy `{other}`"))),
        }
    }
}

impl From<PolicyName> for ThresholdPolicy {
    fn from(p: PolicyName) -> Self {
        match p {
            PolicyName::Fixed => ThresholdPolicy::default(),
            PolicyName::Grid => ThresholdPolicy::Grid,
        }
    }
}

/// Partially specified experiment, as read from a file or assembled from flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub mode: Option<Mode>,
    pub scenario: Option<String>,
    pub k: Option<usize>,
    pub snr_db: Option<Vec<f64>>,
    pub trials: Option<usize>,
    pub estimators: Option<Vec<String>>,
    pub seed: Option<u64>,
    pub sigma2: Option<Sigma2Source>,
    pub threshold_policy: Option<PolicyName>,
    pub l: Option<usize>,
    pub blank_carriers: Option<usize>,
    pub cp_len: Option<usize>,
    pub data_symbols: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ExperimentFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidExperiment(e.to_string()))
    }

    /// Fields set in `other` win.
    pub fn overridden_by(self, other: ExperimentFile) -> Self {
        Self {
            mode: other.mode.or(self.mode),
            scenario: other.scenario.or(self.scenario),
            k: other.k.or(self.k),
            snr_db: other.snr_db.or(self.snr_db),
            trials: other.trials.or(self.trials),
            estimators: other.estimators.or(self.estimators),
            seed: other.seed.or(self.seed),
            sigma2: other.sigma2.or(self.sigma2),
            threshold_policy: other.threshold_policy.or(self.threshold_policy),
            l: other.l.or(self.l),
            blank_carriers: other.blank_carriers.or(self.blank_carriers),
            cp_len: other.cp_len.or(self.cp_len),
            data_symbols: other.data_symbols.or(self.data_symbols),
            out: other.out.or(self.out),
        }
    }

    pub fn resolve(self) -> Result<ExperimentConfig> {
        let half_window = self.l.unwrap_or(1);
        let policy: ThresholdPolicy = self.threshold_policy.unwrap_or_default().into();
        let names = self
            .estimators
            .unwrap_or_else(|| vec!["ml".into(), "lmmse".into(), "sure-linear".into(), "sure-let".into()]);
        let estimators = names
            .iter()
            .map(|n| EstimatorSpec::parse_with(n, half_window, policy))
            .collect::<Result<Vec<_>>>()?;
        let config = ExperimentConfig {
            mode: self.mode.unwrap_or_default(),
            scenario: self.scenario.unwrap_or_else(|| "tu6".into()),
            k: self.k.unwrap_or(64),
            snr_grid_db: self.snr_db.unwrap_or_else(|| vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0]),
            trials: self.trials.unwrap_or(2000),
            estimators,
            seed: self.seed.unwrap_or(1),
            sigma2_source: self.sigma2.unwrap_or_default(),
            blank_carriers: self.blank_carriers.unwrap_or(DEFAULT_BLANK_CARRIERS),
            cp_len: self.cp_len,
            data_symbols: self.data_symbols.unwrap_or(DEFAULT_DATA_SYMBOLS),
            output: self.out,
            progress: false,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Built-in profile name or profile file path.
    pub scenario: String,
    pub k: usize,
    pub snr_grid_db: Vec<f64>,
    pub trials: usize,
    pub estimators: Vec<EstimatorSpec>,
    pub seed: u64,
    pub sigma2_source: Sigma2Source,
    pub blank_carriers: usize,
    /// Defaults to `max(K/4, channel length)`.
    pub cp_len: Option<usize>,
    pub data_symbols: usize,
    pub output: Option<PathBuf>,
    /// Report per-SNR progress on standard error.
    pub progress: bool,
}

impl ExperimentConfig {
    pub fn new(scenario: impl Into<String>, k: usize, snr_grid_db: Vec<f64>, trials: usize) -> Self {
        Self {
            mode: Mode::Mse,
            scenario: scenario.into(),
            k,
            snr_grid_db,
            trials,
            estimators: vec![EstimatorSpec::Ml],
            seed: 1,
            sigma2_source: Sigma2Source::True,
            blank_carriers: DEFAULT_BLANK_CARRIERS,
            cp_len: None,
            data_symbols: DEFAULT_DATA_SYMBOLS,
            output: None,
            progress: false,
        }
    }

    pub fn with_estimators(mut self, estimators: Vec<EstimatorSpec>) -> Self {
        self.estimators = estimators;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidExperiment(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.snr_grid_db.is_empty() {
            return bad("SNR grid is empty");
        }
        if self.snr_grid_db.iter().any(|s| s.is_nan()) {
            return bad("SNR grid contains NaN");
        }
        if self.k < 8 || !self.k.is_power_of_two() {
            return bad("K must be a power of two >= 8");
        }
        if self.estimators.is_empty() {
            return bad("no estimators selected");
        }
        if self.sigma2_source == Sigma2Source::Estimated && self.blank_carriers == 0 {
            return bad("estimated noise variance needs blank carriers");
        }
        if self.data_symbols == 0 {
            return bad("data_symbols must be at least 1");
        }
        Ok(())
    }
}
