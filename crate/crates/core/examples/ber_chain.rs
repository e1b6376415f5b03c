//! The coded link: convolutional code, 16-QAM, OFDM through a fading
//! channel, zero-forcing with an estimated CFR, Viterbi decoding.

use ofdm_sure::comms::{conv_encode_terminated, qam16_demap_hard, qam16_map, viterbi_decode};
use ofdm_sure::estimators::{EstimatorSpec, Sigma2Source};
use ofdm_sure::harness::{build_link, run_sweep, ExperimentConfig, Mode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ofdm_sure::Result<()> {
    // building blocks
    let message = [1, 0, 1, 1, 0, 0, 1, 0];
    let mut coded = conv_encode_terminated(&message);
    coded[3] ^= 1;
    coded[11] ^= 1;
    let decoded = viterbi_decode(&coded)?;
    println!("two channel bit errors, decoded == message: {}", decoded[..message.len()] == message);
    let bits = [1, 0, 0, 1, 0, 1, 1, 1];
    let symbols = qam16_map(&bits)?;
    println!("16-QAM {bits:?} -> {symbols:.3?} -> {:?}", qam16_demap_hard(&symbols));

    // one frame end to end
    let mut config = ExperimentConfig::new("tu6", 64, vec![20.0], 1).with_mode(Mode::Ber);
    config.sigma2_source = Sigma2Source::Estimated;
    let link = build_link(&config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let draw = link.draw(20.0, true, &mut rng)?;
    println!(
        "\nframe at 20 dB: sigma2 {:.4}, estimated from blank carriers {:.4}",
        draw.sigma2,
        draw.sigma2_hat.unwrap_or(f64::NAN)
    );
    for name in ["genie", "ml", "sure-let"] {
        let spec: EstimatorSpec = name.parse()?;
        let rec = draw.evaluate(&link, &spec);
        println!("  {name:<9} {} / {} bit errors", rec.bit_errors, rec.bits);
    }

    // a short BER sweep
    config.snr_grid_db = vec![14.0, 18.0, 22.0, 26.0];
    config.trials = 500;
    config.estimators = ["genie", "ml", "lmmse", "sure-let"]
        .iter()
        .map(|n| n.parse())
        .collect::<ofdm_sure::Result<_>>()?;
    let table = run_sweep(&config)?;
    println!("\nBER        14 dB     18 dB     22 dB     26 dB");
    for name in ["genie", "ml", "lmmse", "sure-let:1"] {
        let cells: Vec<String> = table
            .series(name)
            .iter()
            .map(|r| format!("{:.2e}", r.ber.unwrap_or(f64::NAN)))
            .collect();
        println!("{name:<10} {}", cells.join("  "));
    }
    Ok(())
}
