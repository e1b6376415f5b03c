//! Complex sample vectors and the unitary DFT.
//!
//! Every transform in the crate uses the unitary convention
//! `X_k = K^{-1/2} sum_n x_n exp(-j 2 pi k n / K)`, so energy and white-noise
//! variance are the same in the time and frequency domains.

use std::cell::RefCell;
use std::collections::HashMap;
use std::ops::{Deref, Index};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Non-empty vector of finite complex baseband samples.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVec(Vec<Complex64>);

impl ComplexVec {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(data))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn from_real(data: &[f64]) -> Result<Self> {
        Self::new(data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }
}

impl Deref for ComplexVec {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl Index<usize> for ComplexVec {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<Complex64>> for ComplexVec {
    type Error = Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        Self::new(v)
    }
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// `sum_k a_k^* b_k`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

type Plans = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, Plans)> = RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn transform(v: &[Complex64], inverse: bool) -> Result<ComplexVec> {
    if v.is_empty() {
        return Err(Error::Empty);
    }
    let n = v.len();
    let fft = PLANS.with(|cell| {
        let (planner, plans) = &mut *cell.borrow_mut();
        plans
            .entry((n, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(n)
                } else {
                    planner.plan_fft_forward(n)
                }
            })
            .clone()
    });
    let mut buf = v.to_vec();
    fft.process(&mut buf);
    let s = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|z| *z *= s);
    ComplexVec::new(buf)
}

/// Unitary forward DFT.
pub fn dft(v: &[Complex64]) -> Result<ComplexVec> {
    transform(v, false)
}

/// Unitary inverse DFT, the adjoint of [`dft`].
pub fn idft(v: &[Complex64]) -> Result<ComplexVec> {
    transform(v, true)
}
