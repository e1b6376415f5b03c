//! Gray-labelled 16-QAM at unit average power.
//!
//! Each symbol carries four bits `b0 b1 b2 b3`: `b0 b1` select the in-phase
//! level and `b2 b3` the quadrature level, both through the per-axis Gray
//! table
//!
//! | bits | level |
//! |------|-------|
//! | 00   | -3    |
//! | 01   | -1    |
//! | 11   | +1    |
//! | 10   | +3    |
//!
//! scaled by `1/sqrt(10)`. Grid neighbours differ in exactly one bit.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const BITS_PER_SYMBOL: usize = 4;

fn scale() -> f64 {
    1.0 / 10f64.sqrt()
}

fn level(b_hi: u8, b_lo: u8) -> f64 {
    match (b_hi & 1, b_lo & 1) {
        (0, 0) => -3.0,
        (0, 1) => -1.0,
        (1, 1) => 1.0,
        _ => 3.0,
    }
}

/// Nearest level's Gray bits. On exact midpoints the smaller label wins,
/// which for the whole symbol yields the lexicographically smallest label.
fn slice(x: f64) -> (u8, u8) {
    let candidates = [(-3.0, (0, 0)), (-1.0, (0, 1)), (1.0, (1, 1)), (3.0, (1, 0))];
    let mut best = candidates[0];
    let mut best_d = f64::INFINITY;
    for &(lvl, bits) in &candidates {
        let d = (x - lvl).abs();
        if d < best_d || (d == best_d && bits < best.1) {
            best = (lvl, bits);
            best_d = d;
        }
    }
    best.1
}

pub fn qam16_map(bits: &[u8]) -> Result<Vec<Complex64>> {
    if !bits.len().is_multiple_of(BITS_PER_SYMBOL) {
        return Err(Error::BitLength {
            len: bits.len(),
            multiple: BITS_PER_SYMBOL,
        });
    }
    let s = scale();
    Ok(bits
        .chunks_exact(BITS_PER_SYMBOL)
        .map(|b| Complex64::new(level(b[0], b[1]) * s, level(b[2], b[3]) * s))
        .collect())
}

/// Minimum-distance hard decisions.
pub fn qam16_demap_hard(symbols: &[Complex64]) -> Vec<u8> {
    let inv = 10f64.sqrt();
    let mut out = Vec::with_capacity(symbols.len() * BITS_PER_SYMBOL);
    for z in symbols {
        let (i0, i1) = slice(z.re * inv);
        let (q0, q1) = slice(z.im * inv);
        out.extend_from_slice(&[i0, i1, q0, q1]);
    }
    out
}
