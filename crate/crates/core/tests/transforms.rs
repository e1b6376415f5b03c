use ofdm_sure::channels::{circular_convolve, transmit_with_prefix, CirRealization};
use ofdm_sure::estimators::sure_risk;
use ofdm_sure::model::{build_cfr, build_shift_matrix};
use ofdm_sure::signal::{inner, norm_sqr};
use ofdm_sure::{dft, idft, Complex64, ComplexVec};
use proptest::prelude::*;

fn complex_vec(len: impl Into<prop::collection::SizeRange>) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
}

fn pow2_vec() -> impl Strategy<Value = Vec<Complex64>> {
    (3u32..9).prop_flat_map(|e| complex_vec(1usize << e))
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = norm_sqr(a).max(norm_sqr(b)).max(1.0).sqrt();
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

proptest! {
    #[test]
    fn dft_round_trip(x in complex_vec(1..300)) {
        let back = idft(&dft(&x).unwrap()).unwrap();
        prop_assert!(close(&back, &x, 1e-12));
    }

    #[test]
    fn dft_preserves_inner_products(x in pow2_vec(), seed in any::<u64>()) {
        let y: Vec<Complex64> = x.iter().enumerate().map(|(i, v)| v * Complex64::from_polar(1.0, (seed % 97) as f64 + i as f64)).collect();
        let lhs = inner(&dft(&x).unwrap(), &dft(&y).unwrap());
        let rhs = inner(&x, &y);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * norm_sqr(&x).max(1.0));
    }

    #[test]
    fn convolution_theorem(s in complex_vec(32), g in complex_vec(1..=8)) {
        let cir = CirRealization::new(ComplexVec::new(g.clone()).unwrap());
        let lhs = dft(&circular_convolve(&s, &cir).unwrap()).unwrap();
        let h = cir.frequency_response(32).unwrap();
        let rhs: Vec<Complex64> = dft(&s).unwrap().iter().zip(h.iter()).map(|(a, b)| a * b).collect();
        prop_assert!(close(&lhs, &rhs, 1e-11));
        // link response is the unitary CFR scaled by sqrt(K)
        let cfr = build_cfr(&g, 32).unwrap();
        prop_assert!(close(&h, &cfr.scale(32f64.sqrt()), 1e-12));
    }

    #[test]
    fn cyclic_prefix_makes_linear_convolution_circular(s in complex_vec(16), g in complex_vec(1..=5)) {
        let cir = CirRealization::new(ComplexVec::new(g).unwrap());
        let via_prefix = transmit_with_prefix(&s, &cir, 4).unwrap();
        let circular = circular_convolve(&s, &cir).unwrap();
        prop_assert!(close(&via_prefix, &circular, 1e-12));
    }

    #[test]
    fn shift_matrix_index_law(y in pow2_vec(), l in 0usize..3) {
        let k = y.len();
        let m = build_shift_matrix(&y, l).unwrap();
        prop_assert_eq!(m.ncols(), 2 * l + 1);
        for row in 0..k {
            for col in 0..=2 * l {
                let lag = col as isize - l as isize;
                prop_assert_eq!(m[(row, col)], y[(row as isize + lag).rem_euclid(k as isize) as usize]);
            }
        }
    }

    #[test]
    fn identity_denoiser_scores_noise_variance(y in complex_vec(1..100), sigma2 in 0.0f64..5.0) {
        let k = y.len() as f64;
        let r = sure_risk(&y, &y, Complex64::new(k, 0.0), sigma2).unwrap();
        prop_assert!((r.epsilon - sigma2).abs() <= 1e-9 * (1.0 + norm_sqr(&y) / k));
    }
}
