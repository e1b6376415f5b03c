//! Preamble-based channel estimation for cyclic-prefix OFDM.
//!
//! The crate models the CFR as an unknown deterministic vector observed in
//! white Gaussian noise and denoises it with parametric estimators whose
//! parameters minimize Stein's unbiased risk estimate (SURE): a linear
//! filter over neighbouring subcarriers, and the same filter augmented with a
//! LET shrinkage of the CIR taps. ML, LMMSE and CIR-thresholding baselines,
//! a coded 16-QAM link and a seeded Monte Carlo harness are included for
//! comparison.
//!
//! See the `examples/` directory for one runnable program per capability.

// `!(x >= 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod comms;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod model;
pub mod signal;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use signal::{dft, idft, ComplexVec};
