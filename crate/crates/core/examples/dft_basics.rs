//! Unitary DFT, and how a channel impulse response maps to the per-subcarrier
//! gains seen by the receiver.

use ofdm_sure::channels::{circular_convolve, CirRealization};
use ofdm_sure::model::build_cfr;
use ofdm_sure::signal::norm_sqr;
use ofdm_sure::{dft, idft, Complex64, ComplexVec};

fn main() -> ofdm_sure::Result<()> {
    let k = 8;
    let x: Vec<Complex64> = (0..k).map(|n| Complex64::new(n as f64, (n as f64).sin())).collect();
    let spectrum = dft(&x)?;
    println!("||x||^2 = {:.6}, ||F x||^2 = {:.6}", norm_sqr(&x), spectrum.norm_sqr());
    let back = idft(&spectrum)?;
    let err: f64 = back.iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("round-trip max error {err:.2e}");

    // two-tap channel: h = F [g; 0] is the unitary CFR, the link gain is sqrt(K) h
    let g = ComplexVec::new(vec![Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)])?;
    let cfr = build_cfr(&g, k)?;
    let cir = CirRealization::new(g);
    let link = cir.frequency_response(k)?;
    println!("\n k   |h_k|     |H_k|");
    for i in 0..k {
        println!("{i:>2}  {:.4}   {:.4}", cfr[i].norm(), link[i].norm());
    }

    // circular convolution in time is a per-subcarrier product in frequency
    let y = dft(&circular_convolve(&x, &cir)?)?;
    let worst = (0..k)
        .map(|i| (y[i] - spectrum[i] * link[i]).norm())
        .fold(0.0, f64::max);
    println!("\nconvolution theorem residual {worst:.2e}");
    Ok(())
}
