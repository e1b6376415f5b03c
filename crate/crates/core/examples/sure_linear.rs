//! SURE-tuned linear smoothing of one noisy preamble observation: the
//! solved weights, the risk estimate, and the error it stands in for.

use ofdm_sure::channels::{draw_cir, ChannelProfile};
use ofdm_sure::comms::snr_db_to_sigma2;
use ofdm_sure::estimators::{estimate_james_stein, estimate_sure_linear};
use ofdm_sure::model::observe_preamble;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ofdm_sure::Result<()> {
    let k = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let truth = draw_cir(&ChannelProfile::tu6()?, &mut rng).frequency_response(k)?;

    println!("SNR  L   weights (a_-L .. a_L)                          eps       adaptive  true error");
    for snr in [0.0, 10.0, 20.0] {
        let sigma2 = snr_db_to_sigma2(snr);
        let obs = observe_preamble(&truth, sigma2, &mut rng)?;
        for l in [0, 1, 2] {
            let est = estimate_sure_linear(&obs, sigma2, l)?;
            let err = est.h_hat.iter().zip(truth.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>() / k as f64;
            let adaptive = est.adaptive_risk(obs.y(), sigma2)?;
            let w: Vec<String> = est
                .params
                .weights()
                .iter()
                .map(|a| format!("{:+.2}{:+.2}i", a.re, a.im))
                .collect();
            println!(
                "{snr:>3} {l:>2}   {:<46} {:.2e}  {:.2e}  {:.2e}",
                w.join(" "),
                est.risk.epsilon,
                adaptive.epsilon,
                err
            );
        }
    }

    // L = 0 is James-Stein shrinkage
    let sigma2 = snr_db_to_sigma2(5.0);
    let obs = observe_preamble(&truth, sigma2, &mut rng)?;
    let js = estimate_james_stein(&obs, sigma2)?;
    let closed = 1.0 - k as f64 * sigma2 / obs.y().norm_sqr();
    println!("\nJames-Stein factor {:.6} vs 1 - K sigma2/||y||^2 = {closed:.6}", js.params.centre().re);
    Ok(())
}
