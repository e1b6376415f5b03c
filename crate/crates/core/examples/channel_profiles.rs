//! Power-delay profiles: the shipped fixtures, a custom profile file, random
//! channel draws and the CFR autocorrelation the LMMSE baseline relies on.

use ofdm_sure::channels::{cfr_autocorrelation, draw_cir, ChannelProfile};
use ofdm_sure::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ofdm_sure::Result<()> {
    for name in ["awgn", "rayleigh1", "tu6"] {
        let p = ChannelProfile::resolve(name)?;
        let taps: Vec<String> = p
            .taps()
            .iter()
            .map(|t| format!("{}:{:.3}", t.delay, t.power))
            .collect();
        println!("{name:<10} fading={:<5} taps {}", p.is_fading(), taps.join(" "));
    }

    // the Typical Urban delays depend on the sample period
    let tu = ChannelProfile::typical_urban(0.1)?;
    let delays: Vec<usize> = tu.taps().iter().map(|t| t.delay).collect();
    println!("TU at 0.1 us sampling: delays {delays:?}");

    // profile files: `delay power_db` per line, `#` comments
    let dir = std::env::temp_dir().join("ofdm-sure-example");
    std::fs::create_dir_all(&dir).map_err(|source| ofdm_sure::Error::Io {
        path: dir.clone(),
        source,
    })?;
    let path = dir.join("two_ray.prof");
    std::fs::write(&path, "# two-ray\n0  0.0\n5 -6.0\n").map_err(|source| ofdm_sure::Error::Io {
        path: path.clone(),
        source,
    })?;
    let custom = ChannelProfile::load(&path)?;
    println!("loaded {} with {} taps, length {}", custom.name(), custom.taps().len(), custom.len());

    // average |H_k|^2 over draws approaches the zero-lag autocorrelation (1)
    let k = 64;
    let tu6 = ChannelProfile::tu6()?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draws = 5000;
    let mut power = 0.0;
    let mut lag1 = Complex64::new(0.0, 0.0);
    for _ in 0..draws {
        let h = draw_cir(&tu6, &mut rng).frequency_response(k)?;
        power += h.norm_sqr() / k as f64;
        lag1 += (0..k).map(|i| h[(i + 1) % k] * h[i].conj()).sum::<Complex64>() / k as f64;
    }
    let c = cfr_autocorrelation(&tu6, k)?;
    println!(
        "TU-6, K={k}: E|H|^2 = {:.3} (analytic {:.3}), lag-1 correlation {:.3} (analytic {:.3})",
        power / draws as f64,
        c.lags()[0].re,
        lag1 / draws as f64,
        c.lags()[1]
    );
    Ok(())
}
