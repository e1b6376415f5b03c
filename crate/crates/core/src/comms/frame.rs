//! One Monte Carlo trial of the coded link: a QPSK preamble for channel
//! estimation followed by convolutionally coded 16-QAM data symbols, all
//! sent through the same block-fading channel.

use num_complex::Complex64;
use rand::Rng;

use super::conv::{conv_encode_terminated, viterbi_decode, MEMORY};
use super::equalizer::zf_equalize;
use super::qam::{qam16_demap_hard, qam16_map, BITS_PER_SYMBOL};
use crate::channels::{cfr_autocorrelation, draw_cir, transmit_with_prefix, CfrAutocorrelation, ChannelProfile};
use crate::error::{Error, Result};
use crate::estimators::{EstimationContext, EstimatorSpec, Sigma2Source};
use crate::harness::estimate_noise_variance;
use crate::model::{complex_gaussian, complex_gaussian_vec, observe_preamble, ObservationPair, OfdmConfig};
use crate::signal::{dft, idft, ComplexVec};

pub const DEFAULT_DATA_SYMBOLS: usize = 4;
pub const DEFAULT_BLANK_CARRIERS: usize = 500;

/// Noise variance for a per-subcarrier SNR in dB, with unit-power symbols
/// and unit average channel gain: `sigma2 = 10^(-snr/10)`.
pub fn snr_db_to_sigma2(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// Everything that stays fixed across the trials of an experiment cell.
#[derive(Clone, Debug)]
pub struct Link {
    pub profile: ChannelProfile,
    pub config: OfdmConfig,
    pub data_symbols: usize,
    pub blank_carriers: usize,
    pub sigma2_source: Sigma2Source,
    autocorrelation: CfrAutocorrelation,
}

impl Link {
    pub fn new(profile: ChannelProfile, config: OfdmConfig) -> Result<Self> {
        config.check_channel_len(profile.len())?;
        let autocorrelation = cfr_autocorrelation(&profile, config.subcarriers())?;
        Ok(Self {
            profile,
            config,
            data_symbols: DEFAULT_DATA_SYMBOLS,
            blank_carriers: DEFAULT_BLANK_CARRIERS,
            sigma2_source: Sigma2Source::True,
            autocorrelation,
        })
    }

    pub fn with_data_symbols(mut self, n: usize) -> Self {
        self.data_symbols = n;
        self
    }

    pub fn with_sigma2_source(mut self, source: Sigma2Source, blank_carriers: usize) -> Self {
        self.sigma2_source = source;
        self.blank_carriers = blank_carriers;
        self
    }

    pub fn autocorrelation(&self) -> &CfrAutocorrelation {
        &self.autocorrelation
    }

    pub fn subcarriers(&self) -> usize {
        self.config.subcarriers()
    }

    /// Information bits per frame (coded bits fill the data symbols; the
    /// trellis tail takes the rest).
    pub fn message_bits(&self) -> usize {
        let coded = self.data_symbols * self.subcarriers() * BITS_PER_SYMBOL;
        (coded / 2).saturating_sub(MEMORY)
    }

    /// Draws the random part of one trial. With `with_data == false` only the
    /// channel and the preamble observation are produced.
    pub fn draw<R: Rng + ?Sized>(&self, snr_db: f64, with_data: bool, rng: &mut R) -> Result<TrialDraw> {
        let k = self.subcarriers();
        let sigma2 = snr_db_to_sigma2(snr_db);
        let cir = draw_cir(&self.profile, rng);
        let truth = cir.frequency_response(k)?;

        let obs = if with_data {
            let pilots: Vec<Complex64> = (0..k).map(|_| self.config.preamble.symbol(rng)).collect();
            let received = self.through_channel(&pilots, &cir, sigma2, rng)?;
            let y: Vec<Complex64> = received.iter().zip(&pilots).map(|(r, x)| r / x).collect();
            ObservationPair::new(ComplexVec::new(y)?, sigma2)?
        } else {
            observe_preamble(&truth, sigma2, rng)?
        };

        let sigma2_hat = match self.sigma2_source {
            Sigma2Source::True => None,
            Sigma2Source::Estimated => {
                let blank = complex_gaussian_vec(rng, self.blank_carriers, sigma2);
                Some(estimate_noise_variance(&blank)?)
            }
        };

        let data = if with_data {
            let message: Vec<u8> = (0..self.message_bits()).map(|_| rng.random_range(0..2u8)).collect();
            let coded = conv_encode_terminated(&message);
            let mut padded = coded;
            padded.resize(self.data_symbols * k * BITS_PER_SYMBOL, 0);
            let symbols = qam16_map(&padded)?;
            let mut received = Vec::with_capacity(self.data_symbols);
            for chunk in symbols.chunks_exact(k) {
                received.push(self.through_channel(chunk, &cir, sigma2, rng)?);
            }
            Some(DataBurst { message, received })
        } else {
            None
        };

        Ok(TrialDraw {
            truth,
            obs,
            sigma2,
            sigma2_hat,
            data,
        })
    }

    /// IDFT, cyclic prefix, channel, AWGN, prefix removal, DFT.
    fn through_channel<R: Rng + ?Sized>(
        &self,
        freq: &[Complex64],
        cir: &crate::channels::CirRealization,
        sigma2: f64,
        rng: &mut R,
    ) -> Result<ComplexVec> {
        let s = idft(freq)?;
        let r = transmit_with_prefix(&s, cir, self.config.cp_len())?;
        let noisy: Vec<Complex64> = r.iter().map(|z| z + complex_gaussian(rng, sigma2)).collect();
        dft(&noisy)
    }
}

#[derive(Clone, Debug)]
pub struct DataBurst {
    pub message: Vec<u8>,
    /// Frequency-domain received data symbols, before equalization.
    pub received: Vec<ComplexVec>,
}

#[derive(Clone, Debug)]
pub struct TrialDraw {
    /// Link CFR `H`.
    pub truth: ComplexVec,
    pub obs: ObservationPair,
    pub sigma2: f64,
    pub sigma2_hat: Option<f64>,
    pub data: Option<DataBurst>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrialRecord {
    /// `||h_hat - h||^2 / K`; `None` when the estimator failed.
    pub sq_error: Option<f64>,
    pub epsilon: Option<f64>,
    pub bit_errors: u64,
    pub bits: u64,
    /// Estimator or equalizer failure; no bits are counted for the trial.
    pub erased: bool,
}

impl TrialDraw {
    /// Noise variance handed to estimators.
    pub fn working_sigma2(&self) -> f64 {
        self.sigma2_hat.unwrap_or(self.sigma2)
    }

    pub fn evaluate(&self, link: &Link, estimator: &EstimatorSpec) -> TrialRecord {
        let ctx = EstimationContext {
            obs: &self.obs,
            sigma2: self.working_sigma2(),
            autocorrelation: Some(link.autocorrelation()),
            truth: Some(&self.truth),
        };
        let est = match estimator.estimate(&ctx) {
            Ok(est) => est,
            Err(_) => {
                return TrialRecord {
                    erased: true,
                    ..TrialRecord::default()
                }
            }
        };
        let k = self.truth.len() as f64;
        let sq_error = est
            .h_hat
            .iter()
            .zip(self.truth.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            / k;
        let mut record = TrialRecord {
            sq_error: Some(sq_error),
            epsilon: est.epsilon,
            ..TrialRecord::default()
        };
        if let Some(data) = &self.data {
            match decode_burst(data, &est.h_hat) {
                Ok(decoded) => {
                    record.bits = data.message.len() as u64;
                    record.bit_errors =
                        data.message.iter().zip(&decoded).filter(|(a, b)| a != b).count() as u64;
                }
                Err(_) => record.erased = true,
            }
        }
        record
    }
}

fn decode_burst(data: &DataBurst, h_hat: &[Complex64]) -> Result<Vec<u8>> {
    let mut hard = Vec::new();
    for sym in &data.received {
        let eq = zf_equalize(sym, h_hat)?;
        hard.extend(qam16_demap_hard(&eq));
    }
    let coded_len = 2 * (data.message.len() + MEMORY);
    if hard.len() < coded_len {
        return Err(Error::LengthMismatch {
            expected: coded_len,
            actual: hard.len(),
        });
    }
    let mut decoded = viterbi_decode(&hard[..coded_len])?;
    decoded.truncate(data.message.len());
    Ok(decoded)
}

/// Draws one full frame and evaluates `estimator` on it.
pub fn run_frame<R: Rng + ?Sized>(
    link: &Link,
    estimator: &EstimatorSpec,
    snr_db: f64,
    rng: &mut R,
) -> Result<TrialRecord> {
    Ok(link.draw(snr_db, true, rng)?.evaluate(link, estimator))
}

/// Frame evaluation at exactly zero noise, for chain sanity checks.
pub fn run_noiseless_frame<R: Rng + ?Sized>(link: &Link, estimator: &EstimatorSpec, rng: &mut R) -> Result<TrialRecord> {
    run_frame(link, estimator, f64::INFINITY, rng)
}
