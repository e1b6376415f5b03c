//! Tapped-delay-line fading channels and their second-order statistics.
//!
//! Profile files are plain text with one tap per line, `delay_samples power_db`.
//! Anything after `#` is a comment. A line holding only the keyword `static`
//! marks the profile as non-fading (taps take their mean amplitude
//! `sqrt(alpha_p)` with zero phase on every draw); this is how the AWGN
//! scenario is expressed.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{build_cfr, complex_gaussian};
use crate::signal::ComplexVec;

const AWGN: &str = include_str!("../profiles/awgn.prof");
const RAYLEIGH1: &str = include_str!("../profiles/rayleigh1.prof");
const TU6: &str = include_str!("../profiles/tu6.prof");

/// Typical Urban six-path delays (us) and relative powers (dB).
pub const TYPICAL_URBAN_US_DB: [(f64, f64); 6] =
    [(0.0, -3.0), (0.2, 0.0), (0.5, -2.0), (1.6, -6.0), (2.3, -8.0), (5.0, -10.0)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tap {
    pub delay: usize,
    /// Linear average power.
    pub power: f64,
}

/// Power-delay profile, normalized to unit total power.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelProfile {
    name: String,
    taps: Vec<Tap>,
    fading: bool,
}

impl ChannelProfile {
    /// Builds a profile from `(delay, linear power)` pairs.
    pub fn new(name: impl Into<String>, taps: &[(usize, f64)], fading: bool) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidProfile("no taps".into()));
        }
        for w in taps.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidProfile(format!(
                    "delays must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(d, p)) = taps.iter().find(|(_, p)| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::InvalidProfile(format!("tap at delay {d} has power {p}")));
        }
        let total: f64 = taps.iter().map(|t| t.1).sum();
        Ok(Self {
            name: name.into(),
            taps: taps
                .iter()
                .map(|&(delay, p)| Tap {
                    delay,
                    power: p / total,
                })
                .collect(),
            fading,
        })
    }

    pub fn from_db(name: impl Into<String>, taps: &[(usize, f64)], fading: bool) -> Result<Self> {
        let linear: Vec<(usize, f64)> = taps.iter().map(|&(d, db)| (d, 10f64.powf(db / 10.0))).collect();
        Self::new(name, &linear, fading)
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut taps = Vec::new();
        let mut fading = true;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "static" {
                fading = false;
                continue;
            }
            let bad = || Error::InvalidProfile(format!("line {}: expected `delay power_db`, got `{raw}`", lineno + 1));
            let mut fields = line.split_whitespace();
            let delay: usize = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let db: f64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if fields.next().is_some() {
                return Err(bad());
            }
            taps.push((delay, db));
        }
        Self::from_db(name, &taps, fading)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "profile".into());
        Self::parse(name, &text).map_err(|e| Error::Parse {
            path: PathBuf::from(path),
            message: e.to_string(),
        })
    }

    /// Built-in fixture by name (`awgn`, `rayleigh1`, `tu6`), otherwise a file path.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        match name_or_path {
            "awgn" => Self::awgn(),
            "rayleigh1" => Self::rayleigh1(),
            "tu6" => Self::tu6(),
            other => Self::load(other),
        }
    }

    pub fn awgn() -> Result<Self> {
        Self::parse("awgn", AWGN)
    }

    pub fn rayleigh1() -> Result<Self> {
        Self::parse("rayleigh1", RAYLEIGH1)
    }

    pub fn tu6() -> Result<Self> {
        Self::parse("tu6", TU6)
    }

    /// Typical Urban profile quantized to integer delays at `sample_period_us`.
    /// Delays round down; paths landing on the same sample are merged.
    pub fn typical_urban(sample_period_us: f64) -> Result<Self> {
        if !(sample_period_us > 0.0) {
            return Err(Error::InvalidProfile(format!("sample period {sample_period_us}")));
        }
        let mut taps: Vec<(usize, f64)> = Vec::new();
        for &(us, db) in &TYPICAL_URBAN_US_DB {
            let delay = (us / sample_period_us + 1e-9).floor() as usize;
            let p = 10f64.powf(db / 10.0);
            match taps.last_mut() {
                Some(last) if last.0 == delay => last.1 += p,
                _ => taps.push((delay, p)),
            }
        }
        Self::new(format!("tu6@{sample_period_us}us"), &taps, true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn taps(&self) -> &[Tap] {
        &self.taps
    }

    pub fn is_fading(&self) -> bool {
        self.fading
    }

    /// CIR length `P` (last delay + 1).
    pub fn len(&self) -> usize {
        self.taps.last().map_or(0, |t| t.delay + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn total_power(&self) -> f64 {
        self.taps.iter().map(|t| t.power).sum()
    }
}

/// One channel impulse response; zero at delays absent from the profile.
#[derive(Clone, Debug, PartialEq)]
pub struct CirRealization {
    g: ComplexVec,
}

impl CirRealization {
    pub fn new(g: ComplexVec) -> Self {
        Self { g }
    }

    pub fn taps(&self) -> &ComplexVec {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-subcarrier gain seen by a unitary-DFT OFDM link,
    /// `H_k = sum_p g_p exp(-j 2 pi k p / K)`, i.e. `sqrt(K) * build_cfr(g)`.
    /// With a unit-power profile, `E|H_k|^2 = 1`.
    pub fn frequency_response(&self, k: usize) -> Result<ComplexVec> {
        Ok(build_cfr(&self.g, k)?.scale((k as f64).sqrt()))
    }
}

/// Independent per-tap draws `g_p ~ CN(0, alpha_p)`; static profiles return
/// `sqrt(alpha_p)` deterministically.
pub fn draw_cir<R: Rng + ?Sized>(profile: &ChannelProfile, rng: &mut R) -> CirRealization {
    let mut g = vec![Complex64::new(0.0, 0.0); profile.len()];
    for tap in profile.taps() {
        g[tap.delay] = if profile.is_fading() {
            complex_gaussian(rng, tap.power)
        } else {
            Complex64::new(tap.power.sqrt(), 0.0)
        };
    }
    CirRealization::new(ComplexVec::new(g).expect("profile has at least one tap"))
}

/// Circulant CFR autocorrelation, stored by lag:
/// `c(l) = E[H_k H_{k-l}^*] = sum_p alpha_p exp(-j 2 pi l d_p / K)` for the
/// link CFR produced by [`CirRealization::frequency_response`].
#[derive(Clone, Debug, PartialEq)]
pub struct CfrAutocorrelation {
    lags: Vec<Complex64>,
}

impl CfrAutocorrelation {
    pub fn lags(&self) -> &[Complex64] {
        &self.lags
    }

    pub fn len(&self) -> usize {
        self.lags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lags.is_empty()
    }

    /// `C[k][m] = c(k - m mod K)`.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let k = self.lags.len();
        DMatrix::from_fn(k, k, |row, col| self.lags[(row + k - col) % k])
    }
}

pub fn cfr_autocorrelation(profile: &ChannelProfile, k: usize) -> Result<CfrAutocorrelation> {
    if let Some(t) = profile.taps().iter().find(|t| t.delay >= k) {
        return Err(Error::DelayOutOfRange { delay: t.delay, k });
    }
    let lags = (0..k)
        .map(|lag| {
            profile
                .taps()
                .iter()
                .map(|t| Complex64::from_polar(t.power, -2.0 * PI * (lag * t.delay) as f64 / k as f64))
                .sum()
        })
        .collect();
    Ok(CfrAutocorrelation { lags })
}

/// `(s * g)_n = sum_p g_p s_{(n - p) mod K}`.
pub fn circular_convolve(s: &[Complex64], g: &CirRealization) -> Result<ComplexVec> {
    let k = s.len();
    if g.len() > k {
        return Err(Error::ChannelTooLong { taps: g.len(), limit: k });
    }
    let out = (0..k)
        .map(|n| {
            g.taps()
                .iter()
                .enumerate()
                .map(|(p, gp)| gp * s[(n + k - p) % k])
                .sum()
        })
        .collect();
    ComplexVec::new(out)
}

/// Sends one OFDM symbol through the channel the way the air interface does:
/// prepend a `cp_len` cyclic prefix, linearly convolve, drop the prefix.
/// Equals [`circular_convolve`] whenever the channel fits in the prefix.
pub fn transmit_with_prefix(s: &[Complex64], g: &CirRealization, cp_len: usize) -> Result<ComplexVec> {
    let k = s.len();
    if cp_len >= k {
        return Err(Error::InvalidConfig(format!("cyclic prefix {cp_len} >= K={k}")));
    }
    if g.len() > cp_len + 1 {
        return Err(Error::ChannelTooLong {
            taps: g.len(),
            limit: cp_len + 1,
        });
    }
    let framed: Vec<Complex64> = s[k - cp_len..].iter().chain(s).copied().collect();
    let out = (cp_len..framed.len())
        .map(|n| g.taps().iter().enumerate().map(|(p, gp)| gp * framed[n - p]).sum())
        .collect();
    ComplexVec::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{dft, idft};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fixtures_parse_and_normalize() {
        for p in [ChannelProfile::awgn(), ChannelProfile::rayleigh1(), ChannelProfile::tu6()] {
            let p = p.unwrap();
            assert!((p.total_power() - 1.0).abs() < 1e-12);
        }
        let tu = ChannelProfile::tu6().unwrap();
        let delays: Vec<usize> = tu.taps().iter().map(|t| t.delay).collect();
        assert_eq!(delays, vec![0, 1, 2, 8, 11, 25]);
        assert!(tu.is_fading());
        assert!(!ChannelProfile::awgn().unwrap().is_fading());
        assert_eq!(tu.len(), 26);
    }

    #[test]
    fn typical_urban_quantization_matches_fixture() {
        let q = ChannelProfile::typical_urban(0.2).unwrap();
        let f = ChannelProfile::tu6().unwrap();
        assert_eq!(q.taps().len(), f.taps().len());
        for (a, b) in q.taps().iter().zip(f.taps()) {
            assert_eq!(a.delay, b.delay);
            assert!((a.power - b.power).abs() < 1e-12);
        }
        // coarse sampling merges the first two paths
        let coarse = ChannelProfile::typical_urban(1.0).unwrap();
        assert_eq!(coarse.taps()[0].delay, 0);
        assert_eq!(coarse.taps().len(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!(ChannelProfile::parse("x", "").is_err());
        assert!(ChannelProfile::parse("x", "0 0\n0 -3").is_err());
        assert!(ChannelProfile::parse("x", "3 0\n1 -3").is_err());
        assert!(ChannelProfile::parse("x", "0 abc").is_err());
        assert!(ChannelProfile::parse("x", "0 1 2").is_err());
        let p = ChannelProfile::parse("x", "# two taps\n0 0 # main\n\n4 0\n").unwrap();
        assert_eq!(p.taps().len(), 2);
        assert!((p.taps()[0].power - 0.5).abs() < 1e-15);
    }

    #[test]
    fn load_reports_path() {
        let err = ChannelProfile::load("/nonexistent/zz.prof").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/zz.prof"));
    }

    #[test]
    fn awgn_draw_is_deterministic_unit_tap() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ChannelProfile::awgn().unwrap();
        for _ in 0..10 {
            let g = draw_cir(&p, &mut rng);
            assert_eq!(g.taps().as_slice(), &[c(1.0, 0.0)]);
        }
    }

    #[test]
    fn single_tap_rayleigh_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = ChannelProfile::rayleigh1().unwrap();
        let n = 100_000;
        let e: f64 = (0..n).map(|_| draw_cir(&p, &mut rng).taps()[0].norm_sqr()).sum::<f64>() / n as f64;
        assert!((e - 1.0).abs() < 0.03, "{e}");
    }

    #[test]
    fn taps_uncorrelated_and_zero_off_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = ChannelProfile::tu6().unwrap();
        let n = 100_000;
        let (a, b) = (p.taps()[0], p.taps()[1]);
        let mut acc = c(0.0, 0.0);
        let mut acc2 = 0.0;
        for _ in 0..n {
            let g = draw_cir(&p, &mut rng);
            assert_eq!(g.taps()[3], c(0.0, 0.0));
            let x = g.taps()[a.delay] * g.taps()[b.delay].conj();
            acc += x;
            acc2 += x.norm_sqr();
        }
        let mean = acc / n as f64;
        // each real coordinate of the product has variance E|x|^2 / 2
        let se = (acc2 / n as f64 / 2.0 / n as f64).sqrt();
        assert!(mean.re.abs() < 4.0 * se && mean.im.abs() < 4.0 * se);
    }

    #[test]
    fn autocorrelation_single_tap_is_flat() {
        let p = ChannelProfile::rayleigh1().unwrap();
        let c_hh = cfr_autocorrelation(&p, 16).unwrap();
        for z in c_hh.lags() {
            assert!((z - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn autocorrelation_two_taps() {
        let p = ChannelProfile::new("two", &[(0, 1.0), (1, 1.0)], true).unwrap();
        let c_hh = cfr_autocorrelation(&p, 8).unwrap();
        for (l, z) in c_hh.lags().iter().enumerate() {
            let want = (c(1.0, 0.0) + Complex64::from_polar(1.0, -2.0 * PI * l as f64 / 8.0)) / 2.0;
            assert!((z - want).norm() < 1e-14);
        }
        assert!(matches!(cfr_autocorrelation(&p, 1), Err(Error::DelayOutOfRange { .. })));
    }

    #[test]
    fn autocorrelation_hermitian_psd_circulant() {
        let tu = ChannelProfile::tu6().unwrap();
        for k in [32usize] {
            let m = cfr_autocorrelation(&tu, k).unwrap().to_matrix();
            assert!((&m - m.adjoint()).norm() < 1e-12);
            for row in 1..k {
                for col in 0..k {
                    assert_eq!(m[(row, col)], m[(row - 1, (col + k - 1) % k)]);
                }
            }
            let eig = m.clone().symmetric_eigenvalues();
            assert!(eig.iter().all(|&l| l > -1e-10));
        }
    }

    #[test]
    fn autocorrelation_matches_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let p = ChannelProfile::new("t", &[(0, 1.0), (2, 0.5), (5, 0.25)], true).unwrap();
        let k = 8;
        let analytic = cfr_autocorrelation(&p, k).unwrap().to_matrix();
        let n = 50_000;
        let mut acc = DMatrix::<Complex64>::zeros(k, k);
        for _ in 0..n {
            let h = draw_cir(&p, &mut rng).frequency_response(k).unwrap();
            let v = nalgebra::DVector::from_column_slice(h.as_slice());
            acc += &v * v.adjoint();
        }
        acc /= Complex64::new(n as f64, 0.0);
        let scale = analytic[(0, 0)].norm();
        for i in 0..k {
            for j in 0..k {
                assert!((acc[(i, j)] - analytic[(i, j)]).norm() < 0.05 * scale);
            }
        }
    }

    #[test]
    fn convolution_kernels() {
        let s: Vec<Complex64> = (0..8).map(|i| c(i as f64, 1.0 - i as f64)).collect();
        let delta = CirRealization::new(ComplexVec::new(vec![c(1.0, 0.0)]).unwrap());
        assert_eq!(circular_convolve(&s, &delta).unwrap().as_slice(), s.as_slice());
        let shift = CirRealization::new(ComplexVec::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        let out = circular_convolve(&s, &shift).unwrap();
        for n in 0..8 {
            assert_eq!(out[n], s[(n + 7) % 8]);
        }
    }

    #[test]
    fn convolution_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in [8usize, 64, 1024] {
            let s = crate::model::complex_gaussian_vec(&mut rng, k, 1.0);
            let g = CirRealization::new(ComplexVec::new(crate::model::complex_gaussian_vec(&mut rng, 5, 1.0)).unwrap());
            let direct = circular_convolve(&s, &g).unwrap();
            let hs = dft(&s).unwrap();
            let hg = g.frequency_response(k).unwrap();
            let prod: Vec<Complex64> = hs.iter().zip(hg.iter()).map(|(a, b)| a * b).collect();
            let via = idft(&prod).unwrap();
            let err: f64 = direct.iter().zip(via.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            assert!(err <= 1e-10 * direct.norm_sqr().sqrt());
        }
    }

    #[test]
    fn prefix_path_equals_circular() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = crate::model::complex_gaussian_vec(&mut rng, 64, 1.0);
        let g = draw_cir(&ChannelProfile::tu6().unwrap(), &mut rng);
        let a = transmit_with_prefix(&s, &g, 32).unwrap();
        let b = circular_convolve(&s, &g).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
        assert!(transmit_with_prefix(&s, &g, 16).is_err());
    }
}
