//! Linear denoiser `h = Y a` built from cyclic shifts of the CFR observation,
//! with weights that minimize the risk estimate in closed form:
//! `(Y^H Y) a = Y^H y - sigma2 b`, `b = K e_centre`.
//!
//! The centre entry of `b` is the divergence of `Y a` per unit `a_0`: each
//! shifted column contributes only off-diagonal terms when `2L + 1 <= K`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::risk::{sure_risk, RiskReport};
use super::solve::solve_gram;
use crate::error::{Error, Result};
use crate::model::{build_shift_matrix, ObservationPair};
use crate::signal::ComplexVec;

#[derive(Clone, Debug, PartialEq)]
pub struct SureLinearParams {
    half_window: usize,
    weights: Vec<Complex64>,
}

impl SureLinearParams {
    pub fn new(half_window: usize, weights: Vec<Complex64>) -> Result<Self> {
        if weights.len() != 2 * half_window + 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * half_window + 1,
                actual: weights.len(),
            });
        }
        Ok(Self { half_window, weights })
    }

    /// `a` with `a_0 = 1`, reproducing the observation.
    pub fn centre_indicator(half_window: usize) -> Self {
        let mut weights = vec![Complex64::new(0.0, 0.0); 2 * half_window + 1];
        weights[half_window] = Complex64::new(1.0, 0.0);
        Self { half_window, weights }
    }

    pub fn half_window(&self) -> usize {
        self.half_window
    }

    /// `a_{-L}, ..., a_L`.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn weight(&self, lag: isize) -> Complex64 {
        self.weights[(lag + self.half_window as isize) as usize]
    }

    pub fn centre(&self) -> Complex64 {
        self.weights[self.half_window]
    }

    /// Applies the fixed weights to an observation: `h_k = sum_l a_l y_{(k+l) mod K}`.
    pub fn apply(&self, y: &[Complex64]) -> Result<ComplexVec> {
        let shift = build_shift_matrix(y, self.half_window)?;
        let out = shift * DVector::from_column_slice(&self.weights);
        ComplexVec::new(out.iter().copied().collect())
    }

    /// Divergence of [`Self::apply`] with the weights held fixed: `K a_0`.
    pub fn divergence(&self, k: usize) -> Complex64 {
        self.centre() * k as f64
    }
}

#[derive(Clone, Debug)]
pub struct SureLinearEstimate {
    pub h_hat: ComplexVec,
    pub params: SureLinearParams,
    /// Risk at the optimum, weights treated as fixed.
    pub risk: RiskReport,
}

impl SureLinearEstimate {
    /// Risk estimate of the adaptive estimator, using [`adaptive_divergence`].
    /// Its expectation is the MSE of `h_hat` as a function of `y`.
    pub fn adaptive_risk(&self, y: &[Complex64], sigma2: f64) -> Result<RiskReport> {
        let div = if sigma2 == 0.0 {
            self.params.divergence(y.len())
        } else {
            adaptive_divergence(y, &self.params)?
        };
        sure_risk(y, &self.h_hat, div, sigma2)
    }
}

fn check_window(k: usize, half_window: usize) -> Result<()> {
    if 2 * half_window + 1 > k {
        return Err(Error::WindowOutOfRange {
            l: half_window,
            k,
            needed: 2 * half_window + 1,
        });
    }
    Ok(())
}

/// Solves the normal equations for the risk-minimizing weights given the
/// shift matrix of `y`.
pub fn sure_linear_weights(shift: &DMatrix<Complex64>, y: &[Complex64], sigma2: f64) -> Result<SureLinearParams> {
    let k = y.len();
    if shift.nrows() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: shift.nrows(),
        });
    }
    let n = shift.ncols();
    if n.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("shift matrix has even width {n}")));
    }
    let half_window = n / 2;
    check_window(k, half_window)?;
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    if sigma2 == 0.0 {
        return Ok(SureLinearParams::centre_indicator(half_window));
    }
    let adj = shift.adjoint();
    let mut rhs = &adj * DVector::from_column_slice(y);
    rhs[half_window] -= Complex64::new(sigma2 * k as f64, 0.0);
    let a = solve_gram(&adj * shift, &rhs)?;
    SureLinearParams::new(half_window, a.iter().copied().collect())
}

pub fn estimate_sure_linear(obs: &ObservationPair, sigma2: f64, half_window: usize) -> Result<SureLinearEstimate> {
    let y = obs.y();
    let k = y.len();
    check_window(k, half_window)?;
    let shift = build_shift_matrix(y, half_window)?;
    let params = sure_linear_weights(&shift, y, sigma2)?;
    let h_hat = if sigma2 == 0.0 {
        y.clone()
    } else {
        let out = &shift * DVector::from_column_slice(params.weights());
        ComplexVec::new(out.iter().copied().collect())?
    };
    let risk = sure_risk(y, &h_hat, params.divergence(k), sigma2)?;
    Ok(SureLinearEstimate { h_hat, params, risk })
}

/// James-Stein shrinkage `(1 - K sigma2 / ||y||^2) y`, the `L = 0` case.
pub fn estimate_james_stein(obs: &ObservationPair, sigma2: f64) -> Result<SureLinearEstimate> {
    estimate_sure_linear(obs, sigma2, 0)
}

/// Divergence of the full data-adaptive map `y -> Y(y) a(y)`, including the
/// dependence of the solved weights on `y`:
///
/// `K a_0 + N - sum_l a_l sum_k P[k, k-l]`, with `P = Y (Y^H Y)^{-1} Y^H`.
///
/// Plugging this into the risk estimate gives an unbiased estimate of the MSE
/// of the adaptive estimator itself rather than of a fixed-weight filter.
pub fn adaptive_divergence(y: &[Complex64], params: &SureLinearParams) -> Result<Complex64> {
    let k = y.len();
    let l = params.half_window();
    let n = 2 * l + 1;
    check_window(k, l)?;
    // cyclic autocorrelation R(m) = sum_k y_{k+m} y_k^*
    let acf = |m: isize| -> Complex64 {
        let m = m.rem_euclid(k as isize) as usize;
        (0..k).map(|i| y[(i + m) % k] * y[i].conj()).sum()
    };
    let lags: Vec<isize> = (0..n).map(|i| i as isize - l as isize).collect();
    let gram = DMatrix::from_fn(n, n, |i, j| acf(lags[j] - lags[i]));
    let inv = gram.try_inverse().ok_or(Error::Singular)?;
    let mut div = params.divergence(k) + Complex64::new(n as f64, 0.0);
    for (idx, &lag) in lags.iter().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += inv[(i, j)] * acf(lags[i] - lags[j] + lag);
            }
        }
        div -= params.weights()[idx] * s;
    }
    Ok(div)
}
