use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::norm_sqr;

/// Mean power of pure-noise samples, e.g. observations on blank carriers.
pub fn estimate_noise_variance(blank: &[Complex64]) -> Result<f64> {
    if blank.is_empty() {
        return Err(Error::Empty);
    }
    Ok(norm_sqr(blank) / blank.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::complex_gaussian_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeros_and_empty() {
        assert_eq!(estimate_noise_variance(&[Complex64::new(0.0, 0.0); 10]).unwrap(), 0.0);
        assert!(matches!(estimate_noise_variance(&[]), Err(Error::Empty)));
    }

    #[test]
    fn scales_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = complex_gaussian_vec(&mut rng, 100, 1.0);
        let c = Complex64::new(0.3, -2.0);
        let scaled: Vec<Complex64> = w.iter().map(|z| z * c).collect();
        let a = estimate_noise_variance(&w).unwrap();
        let b = estimate_noise_variance(&scaled).unwrap();
        assert!((b - a * c.norm_sqr()).abs() < 1e-12 * b);
    }

    #[test]
    fn five_hundred_samples_concentrate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let reps = 2000;
        let within = (0..reps)
            .filter(|_| {
                let w = complex_gaussian_vec(&mut rng, 500, 0.7);
                (estimate_noise_variance(&w).unwrap() / 0.7 - 1.0).abs() <= 0.10
            })
            .count();
        assert!(within as f64 / reps as f64 >= 0.97, "{within}");
    }
}
