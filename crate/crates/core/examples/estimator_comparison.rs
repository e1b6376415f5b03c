//! MSE-versus-SNR sweep of every estimator on the TU-6 fixture, through the
//! same harness the command-line tool uses.

use ofdm_sure::estimators::EstimatorSpec;
use ofdm_sure::harness::{run_sweep, ExperimentConfig};

fn main() -> ofdm_sure::Result<()> {
    let names = ["ml", "kang", "js", "sure-linear", "sure-let", "sure-let:2", "lmmse"];
    let estimators = names
        .iter()
        .map(|n| n.parse())
        .collect::<ofdm_sure::Result<Vec<EstimatorSpec>>>()?;
    let snrs = vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0];
    let config = ExperimentConfig::new("tu6", 64, snrs.clone(), 1000).with_estimators(estimators.clone());
    let table = run_sweep(&config)?;

    print!("{:<14}", "MSE (dB)");
    for s in &snrs {
        print!("{s:>8.0}");
    }
    println!();
    for spec in &estimators {
        let name = spec.to_string();
        print!("{name:<14}");
        for row in table.series(&name) {
            print!("{:>8.2}", row.mse_db().unwrap_or(f64::NAN));
        }
        println!();
    }
    println!("\nrisk estimate vs measured MSE at 10 dB:");
    for name in ["js", "sure-linear:1", "sure-let:1"] {
        let row = table.row(name, 10.0).expect("row present");
        println!(
            "  {name:<14} mean eps {:.3e}, MSE {:.3e}",
            row.mean_epsilon.unwrap_or(f64::NAN),
            row.mse_mean.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
