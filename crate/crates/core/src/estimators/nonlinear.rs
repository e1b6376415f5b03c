//! Linear shift filter augmented with one LET (linear expansion of
//! thresholds) term: `h = Y a + a_{L+1} y_T`, where `y_T = F r_T` and
//! `r_T,k = r_k exp(-|r_k|^2 / T)` acts tap-wise on the CIR observation.
//!
//! For a fixed threshold the risk estimate is quadratic in
//! `a^+ = [a; a_{L+1}]`, so the weights solve
//! `(Y_T^H Y_T) a^+ = Y_T^H y - sigma2 beta` with
//! `beta = [0..0, K, 0..0, div_r r_T]`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::risk::{sure_risk, RiskReport};
use super::solve::solve_gram;
use crate::error::{Error, Result};
use crate::model::{build_shift_matrix, ObservationPair};
use crate::signal::{dft, ComplexVec};

/// Threshold used by [`ThresholdPolicy::default`], in units of `sigma2`.
pub const DEFAULT_THRESHOLD_MULTIPLE: f64 = 12.0;
/// Upper end of the threshold search, in units of `sigma2`.
pub const GRID_UPPER_MULTIPLE: f64 = 25.0;
pub const GRID_LOWER_MULTIPLE: f64 = 0.5;
pub const GRID_POINTS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdPolicy {
    /// `T = multiple * sigma2`.
    NoiseMultiple(f64),
    /// Geometric grid over `[0.5 sigma2, 25 sigma2]`, keeping the
    /// risk-minimizing threshold.
    Grid,
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        Self::NoiseMultiple(DEFAULT_THRESHOLD_MULTIPLE)
    }
}

impl ThresholdPolicy {
    pub fn thresholds(&self, sigma2: f64) -> Vec<f64> {
        match *self {
            Self::NoiseMultiple(m) => vec![m * sigma2],
            Self::Grid => threshold_grid(sigma2),
        }
    }
}

pub fn threshold_grid(sigma2: f64) -> Vec<f64> {
    let ratio = GRID_UPPER_MULTIPLE / GRID_LOWER_MULTIPLE;
    (0..GRID_POINTS)
        .map(|i| {
            let t = if i + 1 == GRID_POINTS {
                GRID_UPPER_MULTIPLE
            } else {
                GRID_LOWER_MULTIPLE * ratio.powf(i as f64 / (GRID_POINTS - 1) as f64)
            };
            t * sigma2
        })
        .collect()
}

/// Which extra basis vector augments the shift filter. Both span the same
/// space together with `y`, so the optimal estimate is the same.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LetBasis {
    /// `r exp(-|r|^2/T)`
    #[default]
    Residual,
    /// `r (1 - exp(-|r|^2/T))`
    Complement,
}

/// `r_T,k = r_k exp(-|r_k|^2 / T)` and its divergence
/// `sum_k exp(-u_k)(1 - u_k)`, `u_k = |r_k|^2 / T`.
pub fn let_residual(r: &[Complex64], threshold: f64) -> Result<(ComplexVec, f64)> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let mut div = 0.0;
    let out = r
        .iter()
        .map(|&rk| {
            let u = rk.norm_sqr() / threshold;
            let e = (-u).exp();
            div += e * (1.0 - u);
            rk * e
        })
        .collect();
    Ok((ComplexVec::new(out)?, div))
}

/// The complementary LET shrinkage `r_k (1 - exp(-|r_k|^2/T))` and its divergence.
pub fn let_shrink(r: &[Complex64], threshold: f64) -> Result<(ComplexVec, f64)> {
    let (res, div) = let_residual(r, threshold)?;
    let out = r.iter().zip(res.iter()).map(|(a, b)| a - b).collect();
    Ok((ComplexVec::new(out)?, r.len() as f64 - div))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SureLetParams {
    half_window: usize,
    weights: Vec<Complex64>,
    threshold: f64,
}

impl SureLetParams {
    pub fn half_window(&self) -> usize {
        self.half_window
    }

    /// `a_{-L}, ..., a_L, a_{L+1}`.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn linear_weights(&self) -> &[Complex64] {
        &self.weights[..self.weights.len() - 1]
    }

    /// Weight on the LET term.
    pub fn let_weight(&self) -> Complex64 {
        self.weights[self.weights.len() - 1]
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

#[derive(Clone, Debug)]
pub struct SureLetEstimate {
    pub h_hat: ComplexVec,
    pub params: SureLetParams,
    pub risk: RiskReport,
}

/// Evaluates `Y_T a^+` for given weights, returning the estimate and the
/// divergence of the map with the weights held fixed.
pub fn apply_sure_let(
    obs: &ObservationPair,
    weights: &[Complex64],
    threshold: f64,
    basis: LetBasis,
) -> Result<(ComplexVec, Complex64)> {
    if weights.len() < 2 || !weights.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("{} LET weights", weights.len())));
    }
    let half_window = (weights.len() - 2) / 2;
    let (design, beta) = let_design(obs, half_window, threshold, basis)?;
    let out = design * DVector::from_column_slice(weights);
    let div = beta.iter().zip(weights).map(|(b, a)| b * a).sum();
    Ok((ComplexVec::new(out.iter().copied().collect())?, div))
}

/// `Y_T = [Y | y_T]` and the divergence vector `beta`.
fn let_design(
    obs: &ObservationPair,
    half_window: usize,
    threshold: f64,
    basis: LetBasis,
) -> Result<(DMatrix<Complex64>, Vec<Complex64>)> {
    let y = obs.y();
    let k = y.len();
    if 2 * half_window + 2 > k {
        return Err(Error::WindowOutOfRange {
            l: half_window,
            k,
            needed: 2 * half_window + 2,
        });
    }
    let (r_extra, div_extra) = match basis {
        LetBasis::Residual => let_residual(obs.r(), threshold)?,
        LetBasis::Complement => let_shrink(obs.r(), threshold)?,
    };
    let y_extra = dft(&r_extra)?;
    let shift = build_shift_matrix(y, half_window)?;
    let n = shift.ncols();
    let mut design = shift.insert_column(n, Complex64::new(0.0, 0.0));
    design.column_mut(n).copy_from_slice(&y_extra);
    let mut beta = vec![Complex64::new(0.0, 0.0); n + 1];
    beta[half_window] = Complex64::new(k as f64, 0.0);
    beta[n] = Complex64::new(div_extra, 0.0);
    Ok((design, beta))
}

/// Risk-optimal weights at a fixed threshold, with an explicit basis choice.
pub fn estimate_sure_let_with_basis(
    obs: &ObservationPair,
    sigma2: f64,
    half_window: usize,
    threshold: f64,
    basis: LetBasis,
) -> Result<SureLetEstimate> {
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    let y = obs.y();
    let (design, beta) = let_design(obs, half_window, threshold, basis)?;
    let adj = design.adjoint();
    let mut rhs = &adj * DVector::from_column_slice(y);
    for (r, b) in rhs.iter_mut().zip(&beta) {
        *r -= b * sigma2;
    }
    let a = solve_gram(&adj * &design, &rhs)?;
    let h = &design * &a;
    let h_hat = ComplexVec::new(h.iter().copied().collect())?;
    let div: Complex64 = beta.iter().zip(a.iter()).map(|(b, w)| b * w).sum();
    let risk = sure_risk(y, &h_hat, div, sigma2)?;
    Ok(SureLetEstimate {
        h_hat,
        params: SureLetParams {
            half_window,
            weights: a.iter().copied().collect(),
            threshold,
        },
        risk,
    })
}

/// Risk-optimal weights at a fixed threshold `T > 0`.
pub fn estimate_sure_let_at(
    obs: &ObservationPair,
    sigma2: f64,
    half_window: usize,
    threshold: f64,
) -> Result<SureLetEstimate> {
    estimate_sure_let_with_basis(obs, sigma2, half_window, threshold, LetBasis::Residual)
}

/// SURE-LET estimate with the threshold chosen by `policy`.
///
/// A noiseless observation (`sigma2 == 0`) is returned unchanged: the risk is
/// zero at the exact fit and noise-relative thresholds collapse to zero.
pub fn estimate_sure_let(
    obs: &ObservationPair,
    sigma2: f64,
    half_window: usize,
    policy: ThresholdPolicy,
) -> Result<SureLetEstimate> {
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    let k = obs.len();
    if 2 * half_window + 2 > k {
        return Err(Error::WindowOutOfRange {
            l: half_window,
            k,
            needed: 2 * half_window + 2,
        });
    }
    if sigma2 == 0.0 {
        let h_hat = obs.y().clone();
        let mut weights = vec![Complex64::new(0.0, 0.0); 2 * half_window + 2];
        weights[half_window] = Complex64::new(1.0, 0.0);
        let risk = sure_risk(obs.y(), &h_hat, Complex64::new(k as f64, 0.0), 0.0)?;
        return Ok(SureLetEstimate {
            h_hat,
            params: SureLetParams {
                half_window,
                weights,
                threshold: 0.0,
            },
            risk,
        });
    }
    let mut best: Option<SureLetEstimate> = None;
    let mut last_err = None;
    for t in policy.thresholds(sigma2) {
        match estimate_sure_let_at(obs, sigma2, half_window, t) {
            Ok(est) => {
                if best.as_ref().is_none_or(|b| est.risk.epsilon < b.risk.epsilon) {
                    best = Some(est);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::Singular))
}
