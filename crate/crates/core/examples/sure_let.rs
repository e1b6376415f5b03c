//! SURE-LET: the linear shift filter plus one smooth thresholding term.
//! On a single-tap channel the thresholding isolates the one strong CIR tap,
//! which a short frequency-domain smoother cannot.

use ofdm_sure::channels::{draw_cir, ChannelProfile};
use ofdm_sure::comms::snr_db_to_sigma2;
use ofdm_sure::estimators::{estimate_sure_let, estimate_sure_linear, ThresholdPolicy};
use ofdm_sure::model::observe_preamble;
use ofdm_sure::ComplexVec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mse(a: &ComplexVec, b: &ComplexVec) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>() / a.len() as f64
}

fn main() -> ofdm_sure::Result<()> {
    let k = 64;
    let trials = 500;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    println!("scenario   SNR   ML        linear    LET(12s2) LET(grid)  [mean MSE over {trials} draws]");
    for name in ["rayleigh1", "tu6"] {
        let profile = ChannelProfile::resolve(name)?;
        for snr in [5.0, 15.0, 25.0] {
            let sigma2 = snr_db_to_sigma2(snr);
            let mut sums = [0.0; 4];
            for _ in 0..trials {
                let truth = draw_cir(&profile, &mut rng).frequency_response(k)?;
                let obs = observe_preamble(&truth, sigma2, &mut rng)?;
                sums[0] += mse(obs.y(), &truth);
                sums[1] += mse(&estimate_sure_linear(&obs, sigma2, 1)?.h_hat, &truth);
                sums[2] += mse(&estimate_sure_let(&obs, sigma2, 1, ThresholdPolicy::default())?.h_hat, &truth);
                sums[3] += mse(&estimate_sure_let(&obs, sigma2, 1, ThresholdPolicy::Grid)?.h_hat, &truth);
            }
            let m: Vec<String> = sums.iter().map(|s| format!("{:.2e}", s / trials as f64)).collect();
            println!("{name:<10} {snr:>4}  {}", m.join("  "));
        }
    }

    let sigma2 = snr_db_to_sigma2(15.0);
    let truth = draw_cir(&ChannelProfile::rayleigh1()?, &mut rng).frequency_response(k)?;
    let obs = observe_preamble(&truth, sigma2, &mut rng)?;
    let est = estimate_sure_let(&obs, sigma2, 1, ThresholdPolicy::Grid)?;
    println!(
        "\ngrid search picked T = {:.1} sigma2, LET weight {:.3}",
        est.params.threshold() / sigma2,
        est.params.let_weight()
    );
    Ok(())
}
