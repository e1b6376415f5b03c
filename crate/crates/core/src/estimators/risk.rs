//! Stein's unbiased risk estimate for complex Gaussian observations.
//!
//! For `y = x + w`, `w ~ CN(0, sigma2 I)` and any weakly differentiable
//! denoiser `f`,
//!
//! ```text
//! eps = (1/K) [ ||y||^2 - K sigma2 + ||f(y)||^2 - 2 Re{y^H f(y)} + 2 sigma2 Re{div f(y)} ]
//! ```
//!
//! has expectation `E ||x - f(y)||^2 / K`. The divergence is the sum of the
//! Wirtinger derivatives `d f_k / d y_k` (the `y^*` dependence does not
//! enter).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{inner, norm_sqr};

/// The bracketed terms of the risk estimate, each before the `1/K` factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiskComponents {
    /// `||y||^2 - K sigma2`
    pub excess_energy: f64,
    /// `||f(y)||^2`
    pub estimate_energy: f64,
    /// `-2 Re{y^H f(y)}`
    pub cross: f64,
    /// `2 sigma2 Re{div f(y)}`
    pub divergence: f64,
}

impl RiskComponents {
    pub fn sum(&self) -> f64 {
        self.excess_energy + self.estimate_energy + self.cross + self.divergence
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiskReport {
    pub epsilon: f64,
    pub divergence: Complex64,
    pub components: RiskComponents,
}

pub fn sure_risk(y: &[Complex64], estimate: &[Complex64], divergence: Complex64, sigma2: f64) -> Result<RiskReport> {
    if y.len() != estimate.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            actual: estimate.len(),
        });
    }
    if y.is_empty() {
        return Err(Error::Empty);
    }
    let k = y.len() as f64;
    let components = RiskComponents {
        excess_energy: norm_sqr(y) - k * sigma2,
        estimate_energy: norm_sqr(estimate),
        cross: -2.0 * inner(y, estimate).re,
        divergence: 2.0 * sigma2 * divergence.re,
    };
    Ok(RiskReport {
        epsilon: components.sum() / k,
        divergence,
        components,
    })
}
