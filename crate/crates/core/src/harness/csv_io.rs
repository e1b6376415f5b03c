//! CSV output for sweep tables: header plus one row per (estimator, SNR)
//! cell, floats written with nine significant digits, empty fields for
//! values that do not apply.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use super::sweep::{SweepRow, SweepTable};
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 14] = [
    "scenario",
    "estimator",
    "K",
    "snr_db",
    "trials",
    "mse_mean",
    "mse_ci95",
    "ber",
    "bit_count",
    "erasure_count",
    "mean_epsilon",
    "error_bits",
    "sigma2",
    "sigma2_source",
];

fn float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.8e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

fn record(row: &SweepRow) -> [String; 14] {
    [
        row.scenario.clone(),
        row.estimator.clone(),
        row.k.to_string(),
        float(row.snr_db),
        row.trials.to_string(),
        opt(row.mse_mean),
        opt(row.mse_ci95),
        opt(row.ber),
        row.bit_count.to_string(),
        row.erasure_count.to_string(),
        opt(row.mean_epsilon),
        row.error_bits.to_string(),
        float(row.sigma2),
        row.sigma2_source.to_string(),
    ]
}

pub fn write_csv_to<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for row in &table.rows {
        w.write_record(record(row))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_csv(table: &SweepTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io)?;
    write_csv_to(table, file).map_err(|e| match e {
        Error::Csv(c) => Error::Parse {
            path: path.to_path_buf(),
            message: c.to_string(),
        },
        other => other,
    })
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<SweepTable> {
    let path = path.as_ref();
    let bad = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(COLUMNS.iter().copied()) {
        return Err(bad("unexpected header".into()));
    }
    let mut table = SweepTable::default();
    for rec in r.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let f = |i: usize| -> Result<Option<f64>> {
            let s = &rec[i];
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| bad(format!("bad number `{s}`")))
            }
        };
        let u = |i: usize| -> Result<u64> { rec[i].parse().map_err(|_| bad(format!("bad count `{}`", &rec[i]))) };
        let req = |i: usize| -> Result<f64> { f(i)?.ok_or_else(|| bad(format!("missing {}", COLUMNS[i]))) };
        table.rows.push(SweepRow {
            scenario: rec[0].to_string(),
            estimator: rec[1].to_string(),
            k: u(2)? as usize,
            snr_db: req(3)?,
            trials: u(4)?,
            mse_mean: f(5)?,
            mse_ci95: f(6)?,
            ber: f(7)?,
            bit_count: u(8)?,
            erasure_count: u(9)?,
            mean_epsilon: f(10)?,
            error_bits: u(11)?,
            sigma2: req(12)?,
            sigma2_source: rec[13].parse()?,
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(float(0.1), "1.00000000e-1");
        assert_eq!(float(123456789.123), "1.23456789e8");
        assert_eq!(float(0.0), "0");
    }
}
