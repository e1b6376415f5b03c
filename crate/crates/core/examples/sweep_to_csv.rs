//! Experiment files and CSV output: the same path the `ofdm-sure` binary
//! takes, driven from code.

use ofdm_sure::harness::{read_csv, run_sweep, write_csv, write_csv_to, ExperimentFile};

const EXPERIMENT: &str = r#"
mode = "mse"
scenario = "rayleigh1"
k = 128
snr_db = [5, 15, 25]
trials = 300
estimators = ["ml", "sure-linear", "sure-let", "sure-let:1:grid"]
seed = 42
"#;

fn main() -> ofdm_sure::Result<()> {
    let config = ExperimentFile::parse(EXPERIMENT)?.resolve()?;
    let table = run_sweep(&config)?;
    write_csv_to(&table, std::io::stdout().lock())?;

    let path = std::env::temp_dir().join("ofdm-sure-sweep.csv");
    write_csv(&table, &path)?;
    let back = read_csv(&path)?;
    println!("\nwrote {} rows to {}, read back {}", table.rows.len(), path.display(), back.rows.len());
    Ok(())
}
