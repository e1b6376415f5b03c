use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ofdm_sure::estimators::Sigma2Source;
use ofdm_sure::harness::{run_sweep, write_csv, write_csv_to, ExperimentFile, Mode, PolicyName};

/// Monte Carlo MSE / BER sweeps for OFDM preamble channel estimators.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Channel-estimation mean-square error versus SNR.
    Mse(SweepArgs),
    /// Coded 16-QAM bit-error rate versus SNR.
    Ber(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// awgn, rayleigh1, tu6, or a profile file path.
    #[arg(long)]
    scenario: Option<String>,
    /// Number of subcarriers.
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated SNR grid in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    snr: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated estimator names (genie, ml, lmmse, kang, js,
    /// sure-linear[:L], sure-let[:L[:grid|:t=M]]).
    #[arg(long, value_delimiter = ',')]
    estimators: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Noise variance given to estimators: `true` or `est`.
    #[arg(long)]
    sigma2: Option<Sigma2Source>,
    /// SURE-LET threshold: `fixed` (12 sigma^2) or `grid`.
    #[arg(long)]
    threshold_policy: Option<PolicyName>,
    /// Default half-window L (N = 2L + 1 weights).
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    blank_carriers: Option<usize>,
    #[arg(long)]
    cp_len: Option<usize>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(mode: Mode, args: SweepArgs) -> ofdm_sure::Result<()> {
    let base = match &args.config {
        Some(path) => ExperimentFile::load(path)?,
        None => ExperimentFile::default(),
    };
    let flags = ExperimentFile {
        mode: Some(mode),
        scenario: args.scenario,
        k: args.k,
        snr_db: args.snr,
        trials: args.trials,
        estimators: args.estimators,
        seed: args.seed,
        sigma2: args.sigma2,
        threshold_policy: args.threshold_policy,
        l: args.l,
        blank_carriers: args.blank_carriers,
        cp_len: args.cp_len,
        data_symbols: None,
        out: args.out,
    };
    let mut config = base.overridden_by(flags).resolve()?;
    config.progress = true;
    let started = Instant::now();
    let table = run_sweep(&config)?;
    match &config.output {
        Some(path) => write_csv(&table, path)?,
        None => write_csv_to(&table, io::stdout().lock())?,
    }
    eprintln!("done in {:.2?} (SNR = 1/sigma^2 per subcarrier)", started.elapsed());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mse(args) => run(Mode::Mse, args),
        Command::Ber(args) => run(Mode::Ber, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
