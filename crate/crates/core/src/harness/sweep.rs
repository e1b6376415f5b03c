//! Seeded Monte Carlo sweeps over SNR for a set of estimators.
//!
//! Every trial owns an RNG stream derived from
//! `(seed, scenario, K, snr index, trial index)`, and all estimators in a
//! cell are evaluated on the same draw. Per-trial records are collected in
//! trial order and summed sequentially, so results do not depend on the
//! number of worker threads.

use std::time::Instant;

use rayon::prelude::*;

use super::config::{ExperimentConfig, Mode};
use super::seed::trial_rng;
use crate::channels::ChannelProfile;
use crate::comms::{snr_db_to_sigma2, Link, TrialRecord};
use crate::error::Result;
use crate::estimators::Sigma2Source;
use crate::model::{OfdmConfig, PreambleConstellation};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub scenario: String,
    pub estimator: String,
    pub k: usize,
    pub snr_db: f64,
    pub trials: u64,
    pub mse_mean: Option<f64>,
    pub mse_ci95: Option<f64>,
    pub ber: Option<f64>,
    pub bit_count: u64,
    pub erasure_count: u64,
    pub mean_epsilon: Option<f64>,
    pub error_bits: u64,
    /// Noise variance used by the simulator, `10^(-snr_db/10)`.
    pub sigma2: f64,
    pub sigma2_source: Sigma2Source,
}

impl SweepRow {
    pub fn mse_db(&self) -> Option<f64> {
        self.mse_mean.map(|m| 10.0 * m.log10())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn row(&self, estimator: &str, snr_db: f64) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.estimator == estimator && r.snr_db == snr_db)
    }

    /// Rows for one estimator, in SNR-grid order.
    pub fn series(&self, estimator: &str) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.estimator == estimator).collect()
    }

    /// Estimators whose MSE rises with SNR by more than `ci_widths` times the
    /// combined confidence half-widths somewhere along their series.
    pub fn mse_monotonicity_violations(&self, ci_widths: f64) -> Vec<(String, f64)> {
        let mut names: Vec<&str> = self.rows.iter().map(|r| r.estimator.as_str()).collect();
        names.dedup();
        let mut out = Vec::new();
        for name in names {
            let mut series = self.series(name);
            series.sort_by(|a, b| a.snr_db.total_cmp(&b.snr_db));
            for w in series.windows(2) {
                if let (Some(a), Some(b), Some(ca), Some(cb)) = (w[0].mse_mean, w[1].mse_mean, w[0].mse_ci95, w[1].mse_ci95) {
                    if b > a + ci_widths * (ca + cb) {
                        out.push((name.to_string(), w[1].snr_db));
                    }
                }
            }
        }
        out
    }
}

#[derive(Default)]
struct Accumulator {
    trials: u64,
    mse_n: u64,
    mse_sum: f64,
    mse_sq_sum: f64,
    eps_n: u64,
    eps_sum: f64,
    bits: u64,
    errors: u64,
    erasures: u64,
}

impl Accumulator {
    fn push(&mut self, rec: &TrialRecord) {
        self.trials += 1;
        if let Some(e) = rec.sq_error {
            self.mse_n += 1;
            self.mse_sum += e;
            self.mse_sq_sum += e * e;
        }
        if let Some(eps) = rec.epsilon {
            self.eps_n += 1;
            self.eps_sum += eps;
        }
        if rec.erased {
            self.erasures += 1;
        } else {
            self.bits += rec.bits;
            self.errors += rec.bit_errors;
        }
    }

    fn mse(&self) -> (Option<f64>, Option<f64>) {
        if self.mse_n == 0 {
            return (None, None);
        }
        let n = self.mse_n as f64;
        let mean = self.mse_sum / n;
        let ci = if self.mse_n > 1 {
            let var = ((self.mse_sq_sum - n * mean * mean) / (n - 1.0)).max(0.0);
            1.96 * (var / n).sqrt()
        } else {
            0.0
        };
        (Some(mean), Some(ci))
    }
}

/// Cyclic prefix used when the experiment does not set one.
pub fn default_cp_len(k: usize, channel_len: usize) -> usize {
    (k / 4).max(channel_len)
}

pub fn build_link(config: &ExperimentConfig) -> Result<Link> {
    let profile = ChannelProfile::resolve(&config.scenario)?;
    let cp = config.cp_len.unwrap_or_else(|| default_cp_len(config.k, profile.len()));
    let ofdm = OfdmConfig::new(config.k, cp, PreambleConstellation::Qpsk)?;
    Ok(Link::new(profile, ofdm)?
        .with_data_symbols(config.data_symbols)
        .with_sigma2_source(config.sigma2_source, config.blank_carriers))
}

pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepTable> {
    config.validate()?;
    let link = build_link(config)?;
    let with_data = config.mode == Mode::Ber;
    let names: Vec<String> = config.estimators.iter().map(|e| e.to_string()).collect();
    let mut table = SweepTable::default();

    for (snr_index, &snr_db) in config.snr_grid_db.iter().enumerate() {
        let started = Instant::now();
        let records: Vec<Vec<TrialRecord>> = (0..config.trials as u64)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(config.seed, &config.scenario, config.k, snr_index, trial);
                let draw = link.draw(snr_db, with_data, &mut rng)?;
                Ok(config.estimators.iter().map(|e| draw.evaluate(&link, e)).collect())
            })
            .collect::<Result<_>>()?;

        let mut accs: Vec<Accumulator> = names.iter().map(|_| Accumulator::default()).collect();
        for trial in &records {
            for (acc, rec) in accs.iter_mut().zip(trial) {
                acc.push(rec);
            }
        }
        for (name, acc) in names.iter().zip(&accs) {
            let (mse_mean, mse_ci95) = acc.mse();
            table.rows.push(SweepRow {
                scenario: link.profile.name().to_string(),
                estimator: name.clone(),
                k: config.k,
                snr_db,
                trials: acc.trials,
                mse_mean,
                mse_ci95,
                ber: (with_data && acc.bits > 0).then(|| acc.errors as f64 / acc.bits as f64),
                bit_count: acc.bits,
                erasure_count: acc.erasures,
                mean_epsilon: (acc.eps_n > 0).then(|| acc.eps_sum / acc.eps_n as f64),
                error_bits: acc.errors,
                sigma2: snr_db_to_sigma2(snr_db),
                sigma2_source: config.sigma2_source,
            });
        }
        if config.progress {
            eprintln!(
                "[{}] K={} SNR {:>6.2} dB: {} trials in {:.2?}",
                config.scenario,
                config.k,
                snr_db,
                config.trials,
                started.elapsed()
            );
        }
    }
    Ok(table)
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(config: &ExperimentConfig, threads: usize) -> Result<SweepTable> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::error::Error::InvalidExperiment(e.to_string()))?;
    pool.install(|| run_sweep(config))
}
