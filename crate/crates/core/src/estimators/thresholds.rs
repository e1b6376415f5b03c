//! Point-wise hard and soft thresholding, for comparison plots and tests.
//! Neither is risk-optimized here: the hard rule is discontinuous, so the
//! risk estimate does not apply to it.

use num_complex::Complex64;

/// Keeps `r_k` when `|r_k| >= T`.
pub fn hard_threshold(r: &[Complex64], threshold: f64) -> Vec<Complex64> {
    r.iter()
        .map(|&z| if z.norm() >= threshold { z } else { Complex64::new(0.0, 0.0) })
        .collect()
}

/// `max(|r_k| - T, 0) exp(j arg r_k)`.
pub fn soft_threshold(r: &[Complex64], threshold: f64) -> Vec<Complex64> {
    r.iter()
        .map(|&z| {
            let m = z.norm();
            if m <= threshold {
                Complex64::new(0.0, 0.0)
            } else {
                z * ((m - threshold) / m)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_keeps_boundary() {
        let r = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.999)];
        let out = hard_threshold(&r, 2.0);
        assert_eq!(out[0], r[0]);
        assert_eq!(out[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn soft_shrinks_magnitude() {
        let t = 1.5;
        let z = Complex64::from_polar(2.0 * t, 0.9);
        let out = soft_threshold(&[z, Complex64::from_polar(t, 2.0)], t);
        assert!((out[0] - Complex64::from_polar(t, 0.9)).norm() < 1e-14);
        assert_eq!(out[1], Complex64::new(0.0, 0.0));
    }
}
