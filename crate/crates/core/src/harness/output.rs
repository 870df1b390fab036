//! Flat CSV and JSON writers. Column order is part of the interface: the
//! `*_COLUMNS` constants list it, and each row struct serializes in that order.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::MetricsReport;
use crate::sampler::ShotHistogram;

use super::{Calibration, Evaluation, SweepRow};

pub const DISTRIBUTION_COLUMNS: [&str; 4] = ["index", "x", "target_prob", "prepared_prob"];

pub const SAMPLE_COLUMNS: [&str; 5] = ["index", "x", "count", "frequency", "exact_prob"];

pub const SWEEP_COLUMNS: [&str; 16] = [
    "n",
    "delta",
    "beta",
    "gate_total",
    "cphase_count",
    "pruned_count",
    "mse",
    "kl",
    "fidelity",
    "fidelity_bound",
    "wall_time_ms",
    "method",
    "kl_smoothed",
    "coherent_fidelity",
    "qft_fidelity",
    "error",
];

pub const CALIBRATION_COLUMNS: [&str; 6] =
    ["label", "beta", "kl", "kl_smoothed", "fidelity", "mse"];

pub const REPORT_COLUMNS: [&str; 19] = [
    "n",
    "lambda",
    "beta",
    "delta",
    "mse",
    "mse_phase_optimized",
    "kl",
    "kl_smoothed",
    "fidelity",
    "coherent_fidelity",
    "qft_fidelity",
    "fidelity_bound",
    "gate_total",
    "ry_count",
    "h_count",
    "x_count",
    "cphase_count",
    "swap_count",
    "pruned_count",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub index: usize,
    pub x: f64,
    pub target_prob: f64,
    pub prepared_prob: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: usize,
    pub x: f64,
    pub count: u64,
    pub frequency: f64,
    pub exact_prob: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRow {
    pub label: String,
    pub beta: f64,
    pub kl: f64,
    pub kl_smoothed: f64,
    pub fidelity: f64,
    pub mse: f64,
}

/// [`MetricsReport`] flattened to one CSV line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub lambda: f64,
    pub beta: f64,
    pub delta: f64,
    pub mse: f64,
    pub mse_phase_optimized: f64,
    pub kl: f64,
    pub kl_smoothed: f64,
    pub fidelity: f64,
    pub coherent_fidelity: f64,
    pub qft_fidelity: f64,
    pub fidelity_bound: f64,
    pub gate_total: usize,
    pub ry_count: usize,
    pub h_count: usize,
    pub x_count: usize,
    pub cphase_count: usize,
    pub swap_count: usize,
    pub pruned_count: usize,
}

impl From<&MetricsReport> for ReportRow {
    fn from(r: &MetricsReport) -> Self {
        let inv = &r.inventory;
        Self {
            n: r.num_qubits,
            lambda: r.lambda,
            beta: r.beta,
            delta: r.delta,
            mse: r.mse_amplitude,
            mse_phase_optimized: r.mse_phase_optimized,
            kl: r.kl_divergence,
            kl_smoothed: r.kl_smoothed,
            fidelity: r.fidelity,
            coherent_fidelity: r.coherent_fidelity,
            qft_fidelity: r.qft_fidelity,
            fidelity_bound: r.fidelity_bound,
            gate_total: inv.total,
            ry_count: inv.ry,
            h_count: inv.h,
            x_count: inv.x,
            cphase_count: inv.cphase,
            swap_count: inv.swap,
            pruned_count: inv.pruned_cphase,
        }
    }
}

pub fn distribution_rows(eval: &Evaluation) -> Vec<DistributionRow> {
    eval.grid
        .iter()
        .zip(&eval.target.probabilities)
        .zip(eval.prepared_probabilities())
        .enumerate()
        .map(
            |(index, ((&x, &target_prob), prepared_prob))| DistributionRow {
                index,
                x,
                target_prob,
                prepared_prob,
            },
        )
        .collect()
}

pub fn sample_rows(
    hist: &ShotHistogram,
    grid: &[f64],
    exact: &[f64],
    laplace: bool,
) -> Vec<SampleRow> {
    let freq = if laplace {
        hist.laplace_frequencies()
    } else {
        hist.frequencies()
    };
    hist.counts
        .iter()
        .enumerate()
        .map(|(index, &count)| SampleRow {
            index,
            x: grid[index],
            count,
            frequency: freq[index],
            exact_prob: exact[index],
        })
        .collect()
}

/// The optimum first, then the named candidates, then every probe sorted by `beta`.
pub fn calibration_rows(cal: &Calibration) -> Vec<CalibrationRow> {
    let row = |label: &str, p: &super::CalibrationPoint| CalibrationRow {
        label: label.to_string(),
        beta: p.beta,
        kl: p.kl,
        kl_smoothed: p.kl_smoothed,
        fidelity: p.fidelity,
        mse: p.mse,
    };
    let mut probes = cal.table.clone();
    probes.sort_by(|a, b| a.beta.total_cmp(&b.beta));
    std::iter::once(row("best", &cal.best))
        .chain(cal.candidates.iter().map(|(label, p)| row(label, p)))
        .chain(probes.iter().map(|p| row("probe", p)))
        .collect()
}

fn write_rows<W: Write, R: Serialize>(out: W, columns: &[&str], rows: &[R]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    // explicit header so an empty table still carries its schema
    w.write_record(columns)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_distribution_csv<W: Write>(out: W, rows: &[DistributionRow]) -> Result<()> {
    write_rows(out, &DISTRIBUTION_COLUMNS, rows)
}

pub fn write_samples_csv<W: Write>(out: W, rows: &[SampleRow]) -> Result<()> {
    write_rows(out, &SAMPLE_COLUMNS, rows)
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    write_rows(out, &SWEEP_COLUMNS, rows)
}

pub fn write_calibration_csv<W: Write>(out: W, rows: &[CalibrationRow]) -> Result<()> {
    write_rows(out, &CALIBRATION_COLUMNS, rows)
}

pub fn write_report_csv<W: Write>(out: W, report: &MetricsReport) -> Result<()> {
    write_rows(out, &REPORT_COLUMNS, &[ReportRow::from(report)])
}

/// Pretty-printed JSON with a trailing newline. Non-finite floats become `null`.
pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}
