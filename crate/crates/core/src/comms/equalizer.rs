use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest channel-estimate magnitude the equalizer will divide by.
pub const MIN_GAIN: f64 = 1e-12;

/// Zero-forcing: `x_k = y_k / h_k` per subcarrier.
pub fn zf_equalize(y: &[Complex64], h_hat: &[Complex64]) -> Result<Vec<Complex64>> {
    if y.len() != h_hat.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            actual: h_hat.len(),
        });
    }
    y.iter()
        .zip(h_hat)
        .enumerate()
        .map(|(k, (yk, hk))| {
            if hk.norm() < MIN_GAIN {
                Err(Error::EqualizerSingular { subcarrier: k })
            } else {
                Ok(yk / hk)
            }
        })
        .collect()
}
