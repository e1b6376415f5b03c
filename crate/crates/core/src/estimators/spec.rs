//! Named estimator configurations, as selected on the command line and in
//! experiment files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    estimate_cir_threshold, estimate_lmmse_circulant, estimate_sure_let, estimate_sure_linear, ThresholdPolicy,
    DEFAULT_THRESHOLD_MULTIPLE,
};
use crate::channels::CfrAutocorrelation;
use crate::error::{Error, Result};
use crate::model::ObservationPair;
use crate::signal::ComplexVec;

/// Where an estimator takes its noise variance from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sigma2Source {
    /// The variance the simulator used.
    #[default]
    True,
    /// Estimated from blank carriers.
    #[serde(alias = "est")]
    Estimated,
}

impl fmt::Display for Sigma2Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::True => "true",
            Self::Estimated => "est",
        })
    }
}

impl FromStr for Sigma2Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(Self::True),
            "est" | "estimated" => Ok(Self::Estimated),
            other => Err(Error::InvalidExperiment(format!("sigma2 source `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EstimatorSpec {
    /// The true CFR; a lower bound for validation.
    Genie,
    Ml,
    /// LMMSE with the analytic autocorrelation of the scenario's profile.
    Lmmse,
    /// CIR thresholding at `2 sigma2`.
    CirThreshold,
    JamesStein,
    SureLinear { half_window: usize },
    SureLet { half_window: usize, policy: ThresholdPolicy },
}

/// Inputs an estimator may draw on for one trial.
pub struct EstimationContext<'a> {
    pub obs: &'a ObservationPair,
    /// Noise variance handed to the estimator (true or estimated).
    pub sigma2: f64,
    pub autocorrelation: Option<&'a CfrAutocorrelation>,
    pub truth: Option<&'a ComplexVec>,
}

#[derive(Clone, Debug)]
pub struct ChannelEstimate {
    pub h_hat: ComplexVec,
    /// Risk estimate for SURE-tuned estimators. Linear ones include the
    /// dependence of the weights on `y`; SURE-LET holds its weights fixed.
    pub epsilon: Option<f64>,
}

impl EstimatorSpec {
    pub fn is_sure(&self) -> bool {
        matches!(self, Self::JamesStein | Self::SureLinear { .. } | Self::SureLet { .. })
    }

    pub fn estimate(&self, ctx: &EstimationContext<'_>) -> Result<ChannelEstimate> {
        let plain = |h_hat| Ok(ChannelEstimate { h_hat, epsilon: None });
        match *self {
            Self::Genie => plain(
                ctx.truth
                    .cloned()
                    .ok_or_else(|| Error::InvalidExperiment("genie estimator needs the true channel".into()))?,
            ),
            Self::Ml => plain(super::estimate_ml(ctx.obs)),
            Self::Lmmse => {
                let c = ctx
                    .autocorrelation
                    .ok_or_else(|| Error::InvalidExperiment("LMMSE needs the channel autocorrelation".into()))?;
                plain(estimate_lmmse_circulant(ctx.obs.y(), c, ctx.sigma2)?)
            }
            Self::CirThreshold => plain(estimate_cir_threshold(ctx.obs, ctx.sigma2)?),
            Self::JamesStein | Self::SureLinear { .. } => {
                let half_window = match *self {
                    Self::SureLinear { half_window } => half_window,
                    _ => 0,
                };
                let est = estimate_sure_linear(ctx.obs, ctx.sigma2, half_window)?;
                // the adaptive risk tracks the MSE of the tuned estimator
                let risk = est.adaptive_risk(ctx.obs.y(), ctx.sigma2)?;
                Ok(ChannelEstimate {
                    h_hat: est.h_hat,
                    epsilon: Some(risk.epsilon),
                })
            }
            Self::SureLet { half_window, policy } => {
                let est = estimate_sure_let(ctx.obs, ctx.sigma2, half_window, policy)?;
                Ok(ChannelEstimate {
                    h_hat: est.h_hat,
                    epsilon: Some(est.risk.epsilon),
                })
            }
        }
    }

    /// Parses a name with `default_half_window` and `default_policy` filling
    /// in what the name leaves out.
    pub fn parse_with(name: &str, default_half_window: usize, default_policy: ThresholdPolicy) -> Result<Self> {
        let mut parts = name.trim().split(':');
        let head = parts.next().unwrap_or("");
        let rest: Vec<&str> = parts.collect();
        let unknown = || Error::UnknownEstimator(name.to_string());
        let half_window = match rest.first() {
            Some(l) => l.parse::<usize>().map_err(|_| unknown())?,
            None => default_half_window,
        };
        let spec = match head {
            "genie" => Self::Genie,
            "ml" => Self::Ml,
            "lmmse" => Self::Lmmse,
            "kang" | "cir-threshold" => Self::CirThreshold,
            "js" | "james-stein" => Self::JamesStein,
            "sure-linear" => Self::SureLinear { half_window },
            "sure-let" => {
                let policy = match rest.get(1) {
                    None => default_policy,
                    Some(&"grid") => ThresholdPolicy::Grid,
                    Some(t) => {
                        let m = t.strip_prefix("t=").ok_or_else(unknown)?;
                        ThresholdPolicy::NoiseMultiple(m.parse().map_err(|_| unknown())?)
                    }
                };
                Self::SureLet { half_window, policy }
            }
            _ => return Err(unknown()),
        };
        let max_parts = match spec {
            Self::SureLet { .. } => 2,
            Self::SureLinear { .. } => 1,
            _ => 0,
        };
        if rest.len() > max_parts {
            return Err(unknown());
        }
        Ok(spec)
    }
}

impl FromStr for EstimatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, 1, ThresholdPolicy::default())
    }
}

impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Genie => f.write_str("genie"),
            Self::Ml => f.write_str("ml"),
            Self::Lmmse => f.write_str("lmmse"),
            Self::CirThreshold => f.write_str("kang"),
            Self::JamesStein => f.write_str("js"),
            Self::SureLinear { half_window } => write!(f, "sure-linear:{half_window}"),
            Self::SureLet { half_window, policy } => match policy {
                ThresholdPolicy::Grid => write!(f, "sure-let:{half_window}:grid"),
                ThresholdPolicy::NoiseMultiple(m) if *m == DEFAULT_THRESHOLD_MULTIPLE => {
                    write!(f, "sure-let:{half_window}")
                }
                ThresholdPolicy::NoiseMultiple(m) => write!(f, "sure-let:{half_window}:t={m}"),
            },
        }
    }
}
