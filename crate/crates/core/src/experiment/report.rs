use std::io::Write;

use super::{ExperimentReport, RowStatus};

pub const CSV_COLUMNS: [&str; 17] = [
    "experiment",
    "kind",
    "n",
    "L",
    "sigma",
    "P",
    "threshold",
    "layer_or_pair",
    "pair_kind",
    "trials",
    "hits",
    "estimate",
    "ci_low",
    "ci_high",
    "analytic",
    "bound",
    "seed",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub(crate) fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per report entry. Rows that were not simulated carry
/// `analytic_only` in the estimate column and leave the counts empty.
pub fn write_csv<W: Write>(report: &ExperimentReport, out: W) -> csv::Result<()> {
    let cfg = &report.config;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    let fixed = [
        cfg.name.clone(),
        cfg.kind.as_str().to_string(),
        cfg.n.to_string(),
        cfg.layers.to_string(),
        real(cfg.sigma),
        real(cfg.power),
        real(cfg.threshold_parameter()),
    ];
    for row in &report.rows {
        let mut rec: Vec<String> = fixed.to_vec();
        rec.push(format!("{}:{}", row.tested, row.sent));
        rec.push(row.kind.label());
        match (&row.status, &row.trial) {
            (RowStatus::Simulated, Some(t)) => {
                rec.push(t.trials.to_string());
                rec.push(t.hits.to_string());
                rec.push(real(t.estimate));
                rec.push(real(t.ci_low));
                rec.push(real(t.ci_high));
            }
            _ => {
                rec.extend(["0", "", "analytic_only", "", ""].map(String::from));
            }
        }
        rec.push(real(row.analytic));
        rec.push(row.bound.map(real).unwrap_or_default());
        rec.push(cfg.seed_or_default().to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
