//! Reference estimators: maximum likelihood, LMMSE and CIR thresholding.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::channels::CfrAutocorrelation;
use crate::error::{Error, Result};
use crate::model::ObservationPair;
use crate::signal::{dft, idft, ComplexVec};

/// The ML estimate under white Gaussian noise is the observation itself.
pub fn estimate_ml(obs: &ObservationPair) -> ComplexVec {
    obs.y().clone()
}

/// `(C + sigma2 I)^{-1} C y` by a dense solve against an arbitrary Hermitian
/// PSD autocorrelation matrix.
pub fn estimate_lmmse(y: &[Complex64], c_hh: &DMatrix<Complex64>, sigma2: f64) -> Result<ComplexVec> {
    let k = y.len();
    if c_hh.nrows() != k || c_hh.ncols() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: c_hh.nrows(),
        });
    }
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    let scale = c_hh.norm().max(f64::MIN_POSITIVE);
    if (c_hh - c_hh.adjoint()).norm() > 1e-9 * scale {
        return Err(Error::NotHermitian);
    }
    let mut system = c_hh.clone();
    for i in 0..k {
        system[(i, i)] += sigma2;
    }
    let eig = system.clone().symmetric_eigenvalues();
    if eig.min() <= 1e-12 * eig.max().abs().max(sigma2) {
        return Err(Error::Singular);
    }
    let rhs = c_hh * DVector::from_column_slice(y);
    let x = system.lu().solve(&rhs).ok_or(Error::Singular)?;
    ComplexVec::new(x.iter().copied().collect())
}

/// LMMSE for a circulant autocorrelation, diagonalized by the DFT:
/// `C = F^H diag(lambda) F` with `lambda = sqrt(K) F c`.
///
/// At `sigma2 == 0` this takes the noiseless limit, projecting onto the
/// range of `C` instead of failing on a rank-deficient autocorrelation.
pub fn estimate_lmmse_circulant(y: &[Complex64], c_hh: &CfrAutocorrelation, sigma2: f64) -> Result<ComplexVec> {
    let k = y.len();
    if c_hh.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: c_hh.len(),
        });
    }
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    let root_k = (k as f64).sqrt();
    let eigen = dft(c_hh.lags())?;
    let peak = eigen.iter().map(|l| l.re.abs()).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::Singular);
    }
    let spectrum = dft(y)?;
    let mut shaped = Vec::with_capacity(k);
    for (lam, yk) in eigen.iter().zip(spectrum.iter()) {
        let lam = lam.re * root_k;
        let floor = 1e-12 * peak * root_k;
        let gain = if sigma2 == 0.0 {
            if lam > floor {
                1.0
            } else {
                0.0
            }
        } else {
            lam / (lam + sigma2)
        };
        shaped.push(yk * gain);
    }
    idft(&shaped)
}

/// Zeroes CIR taps with `|r_k|^2 < 2 sigma2_hat` and transforms back.
pub fn estimate_cir_threshold(obs: &ObservationPair, sigma2_hat: f64) -> Result<ComplexVec> {
    if !(sigma2_hat >= 0.0) {
        return Err(Error::NegativeVariance(sigma2_hat));
    }
    let threshold = 2.0 * sigma2_hat;
    let kept: Vec<Complex64> = obs
        .r()
        .iter()
        .map(|&rk| if rk.norm_sqr() >= threshold { rk } else { Complex64::new(0.0, 0.0) })
        .collect();
    dft(&kept)
}
