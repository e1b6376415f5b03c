//! OFDM frame geometry and the preamble observation model `y = h + w`,
//! `r = F^H y`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::signal::{dft, idft, ComplexVec};

/// Preamble symbol alphabet. Both are unit-modulus, so `X^H X = I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PreambleConstellation {
    Bpsk,
    #[default]
    Qpsk,
}

impl PreambleConstellation {
    pub fn symbol<R: Rng + ?Sized>(self, rng: &mut R) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Self::Bpsk => Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0),
            Self::Qpsk => Complex64::new(
                if rng.random::<bool>() { s } else { -s },
                if rng.random::<bool>() { s } else { -s },
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OfdmConfig {
    subcarriers: usize,
    cp_len: usize,
    pub preamble: PreambleConstellation,
}

impl OfdmConfig {
    pub fn new(subcarriers: usize, cp_len: usize, preamble: PreambleConstellation) -> Result<Self> {
        if subcarriers < 8 || !subcarriers.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "K={subcarriers} must be a power of two >= 8"
            )));
        }
        if cp_len >= subcarriers {
            return Err(Error::InvalidConfig(format!(
                "cyclic prefix {cp_len} must be shorter than K={subcarriers}"
            )));
        }
        Ok(Self {
            subcarriers,
            cp_len,
            preamble,
        })
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn cp_len(&self) -> usize {
        self.cp_len
    }

    /// A channel of `taps` samples is ISI-free only if it fits in the prefix.
    pub fn check_channel_len(&self, taps: usize) -> Result<()> {
        if taps > self.cp_len {
            return Err(Error::ChannelTooLong {
                taps,
                limit: self.cp_len,
            });
        }
        Ok(())
    }
}

/// Noisy CFR observation and its CIR-domain image.
#[derive(Clone, Debug)]
pub struct ObservationPair {
    y: ComplexVec,
    r: ComplexVec,
    sigma2: f64,
}

impl ObservationPair {
    pub fn new(y: ComplexVec, sigma2: f64) -> Result<Self> {
        if !(sigma2 >= 0.0) {
            return Err(Error::NegativeVariance(sigma2));
        }
        let r = idft(&y)?;
        Ok(Self { y, r, sigma2 })
    }

    pub fn y(&self) -> &ComplexVec {
        &self.y
    }

    pub fn r(&self) -> &ComplexVec {
        &self.r
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One `CN(0, sigma2)` sample: real and imaginary parts each carry `sigma2 / 2`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, sigma2: f64) -> Complex64 {
    let s = (sigma2 / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

pub fn complex_gaussian_vec<R: Rng + ?Sized>(rng: &mut R, len: usize, sigma2: f64) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng, sigma2)).collect()
}

/// `h = F [g; 0]`: unitary DFT of the CIR zero-padded to `k` samples.
pub fn build_cfr(g: &[Complex64], k: usize) -> Result<ComplexVec> {
    if g.is_empty() {
        return Err(Error::Empty);
    }
    if g.len() > k {
        return Err(Error::ChannelTooLong {
            taps: g.len(),
            limit: k,
        });
    }
    let mut padded = g.to_vec();
    padded.resize(k, Complex64::new(0.0, 0.0));
    dft(&padded)
}

/// Draws `y = h + w` with `w ~ CN(0, sigma2 I)`.
pub fn observe_preamble<R: Rng + ?Sized>(h: &ComplexVec, sigma2: f64, rng: &mut R) -> Result<ObservationPair> {
    if !(sigma2 >= 0.0) {
        return Err(Error::NegativeVariance(sigma2));
    }
    let y = if sigma2 == 0.0 {
        h.clone()
    } else {
        ComplexVec::new(h.iter().map(|hk| hk + complex_gaussian(rng, sigma2)).collect())?
    };
    ObservationPair::new(y, sigma2)
}

/// Largest half-window usable on a length-`k` observation without a shifted
/// column wrapping onto the centre one.
pub fn max_half_window(k: usize) -> usize {
    k.saturating_sub(1) / 2
}

/// `K x (2L+1)` matrix whose column for lag `l in -L..=L` holds `y_{(k+l) mod K}`
/// in row `k`.
pub fn build_shift_matrix(y: &[Complex64], half_window: usize) -> Result<DMatrix<Complex64>> {
    let k = y.len();
    if k == 0 {
        return Err(Error::Empty);
    }
    if half_window > max_half_window(k) {
        return Err(Error::WindowOutOfRange {
            l: half_window,
            k,
            needed: 2 * half_window + 1,
        });
    }
    let n = 2 * half_window + 1;
    let l = half_window as isize;
    Ok(DMatrix::from_fn(k, n, |row, col| {
        let lag = col as isize - l;
        y[(row as isize + lag).rem_euclid(k as isize) as usize]
    }))
}
