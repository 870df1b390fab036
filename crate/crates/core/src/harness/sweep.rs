use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{encode_exact, exact_encoding_gate_count};
use crate::circuit::count_gates;
use crate::error::{Error, Result};
use crate::metrics::{
    fidelity, kl_divergence, kl_divergence_smoothed, mse, profile_fidelity, pruning_fidelity_bound,
    KL_SMOOTHING,
};
use crate::reference::{target_distribution, GaussianSpec};
use crate::statevector::{simulate, StateVector, MAX_SIM_QUBITS};
use crate::synthesis::{build_gaussian_prep, PruningPolicy, MAX_SYNTH_QUBITS};

use super::{evaluate, BetaMode};

/// Baseline circuits are only simulated up to this size; above it their rows carry gate counts only.
pub const BASELINE_SIM_MAX_QUBITS: usize = 14;

pub const METHOD_QFT: &str = "qft";
pub const METHOD_BASELINE: &str = "amplitude_encoding";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub delta_values: Vec<f64>,
    pub spec: GaussianSpec,
    pub beta_mode: BetaMode,
    pub include_baseline: bool,
    /// Fill `wall_time_ms`; when off the column is 0 and output is reproducible byte for byte.
    pub record_timing: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Config("no qubit counts given".into()));
        }
        if self.delta_values.is_empty() {
            return Err(Error::Config("no pruning thresholds given".into()));
        }
        for &n in &self.n_values {
            if n == 0 || n > MAX_SYNTH_QUBITS {
                return Err(Error::QubitCount {
                    n,
                    max: MAX_SYNTH_QUBITS,
                });
            }
        }
        for &d in &self.delta_values {
            PruningPolicy::new(d)?;
        }
        if let BetaMode::Explicit(b) = self.beta_mode {
            if b.is_nan() || b <= 0.0 {
                return Err(Error::parameter("beta", "positive", b));
            }
        }
        Ok(())
    }
}

/// One line of the sweep table. Metric columns are empty when the row could not
/// be simulated (register too large, or an error recorded in `error`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub delta: f64,
    pub beta: Option<f64>,
    pub gate_total: u64,
    pub cphase_count: u64,
    pub pruned_count: u64,
    pub mse: Option<f64>,
    pub kl: Option<f64>,
    pub fidelity: Option<f64>,
    pub fidelity_bound: f64,
    pub wall_time_ms: f64,
    pub method: String,
    pub kl_smoothed: Option<f64>,
    pub coherent_fidelity: Option<f64>,
    pub qft_fidelity: Option<f64>,
    pub error: Option<String>,
}

impl SweepRow {
    fn empty(n: usize, delta: f64, method: &str) -> Self {
        Self {
            n,
            delta,
            beta: None,
            gate_total: 0,
            cphase_count: 0,
            pruned_count: 0,
            mse: None,
            kl: None,
            fidelity: None,
            fidelity_bound: 1.0,
            wall_time_ms: 0.0,
            method: method.to_string(),
            kl_smoothed: None,
            coherent_fidelity: None,
            qft_fidelity: None,
            error: None,
        }
    }

    fn sort_key(&self) -> (usize, u8, u64) {
        let method = if self.method == METHOD_QFT { 0 } else { 1 };
        (self.n, method, self.delta.to_bits())
    }
}

#[derive(Copy, Clone, Debug)]
enum Cell {
    Qft { n: usize, delta: f64 },
    Baseline { n: usize },
}

fn qft_row(n: usize, delta: f64, spec: &GaussianSpec, beta: Result<f64>) -> Result<SweepRow> {
    let policy = PruningPolicy::new(delta)?;
    let mut row = SweepRow::empty(n, delta, METHOD_QFT);
    row.fidelity_bound = pruning_fidelity_bound(n, delta, false);
    row.pruned_count = policy.pruned_cphase(n) as u64;

    if n > MAX_SIM_QUBITS {
        // synthesis only; beta does not change the gate list
        let beta = beta.unwrap_or(1.0);
        let inv = count_gates(&build_gaussian_prep(n, spec, &policy, Some(beta))?);
        row.gate_total = inv.total as u64;
        row.cphase_count = inv.cphase as u64;
        row.error = Some(format!("not simulated: more than {MAX_SIM_QUBITS} qubits"));
        return Ok(row);
    }
    let beta = beta?;
    let eval = evaluate(n, spec, &policy, beta)?;
    let r = eval.report;
    row.beta = Some(beta);
    row.gate_total = r.inventory.total as u64;
    row.cphase_count = r.inventory.cphase as u64;
    row.mse = Some(r.mse_amplitude);
    row.kl = Some(r.kl_divergence);
    row.fidelity = Some(r.fidelity);
    row.kl_smoothed = Some(r.kl_smoothed);
    row.coherent_fidelity = Some(r.coherent_fidelity);
    row.qft_fidelity = Some(r.qft_fidelity);
    Ok(row)
}

fn baseline_row(n: usize, spec: &GaussianSpec) -> Result<SweepRow> {
    let mut row = SweepRow::empty(n, 0.0, METHOD_BASELINE);
    if n > MAX_SIM_QUBITS {
        row.error = Some(format!(
            "exact encoding needs the full target vector (n <= {MAX_SIM_QUBITS})"
        ));
        return Ok(row);
    }
    row.gate_total = exact_encoding_gate_count(n) as u64;
    row.cphase_count = (1u64 << n) - 2;
    if n > BASELINE_SIM_MAX_QUBITS {
        row.error = Some(format!(
            "not simulated: more than {BASELINE_SIM_MAX_QUBITS} qubits"
        ));
        return Ok(row);
    }
    let target = target_distribution(spec, n)?;
    let circuit = encode_exact(&target.amplitudes, n)?;
    debug_assert_eq!(count_gates(&circuit).total as u64, row.gate_total);
    let state = simulate(&circuit)?;
    let prepared = state.probabilities();
    row.mse = Some(mse(&target.amplitudes, &state)?);
    row.kl = Some(kl_divergence(&target.probabilities, &prepared)?);
    row.kl_smoothed = Some(kl_divergence_smoothed(
        &target.probabilities,
        &prepared,
        KL_SMOOTHING,
    )?);
    row.fidelity = Some(profile_fidelity(&target.amplitudes, &state)?);
    row.coherent_fidelity = Some(fidelity(
        &StateVector::from_real(&target.amplitudes)?,
        &state,
    )?);
    Ok(row)
}

/// Runs every `(n, delta)` cell (plus one baseline row per `n` if requested) in
/// parallel and returns rows sorted by `n`, method, then `delta`. A failing cell
/// yields a row with its `error` column set instead of aborting the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let mut n_values = config.n_values.clone();
    n_values.sort_unstable();
    n_values.dedup();
    let mut deltas = config.delta_values.clone();
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();

    // beta depends on n only; calibrate once per register size
    let betas: BTreeMap<usize, std::result::Result<f64, String>> = n_values
        .par_iter()
        .map(|&n| {
            let beta = if n > MAX_SIM_QUBITS {
                Err("not simulated".to_string())
            } else {
                config
                    .beta_mode
                    .resolve(&config.spec, n)
                    .map_err(|e| e.to_string())
            };
            (n, beta)
        })
        .collect();

    let mut cells: Vec<Cell> = Vec::new();
    for &n in &n_values {
        for &delta in &deltas {
            cells.push(Cell::Qft { n, delta });
        }
        if config.include_baseline {
            cells.push(Cell::Baseline { n });
        }
    }

    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|cell| {
            let start = Instant::now();
            let (n, delta, method) = match *cell {
                Cell::Qft { n, delta } => (n, delta, METHOD_QFT),
                Cell::Baseline { n } => (n, 0.0, METHOD_BASELINE),
            };
            let result = match *cell {
                Cell::Qft { n, delta } => {
                    let beta = betas[&n].clone().map_err(Error::Config);
                    qft_row(n, delta, &config.spec, beta)
                }
                Cell::Baseline { n } => baseline_row(n, &config.spec),
            };
            let mut row = result.unwrap_or_else(|e| {
                let mut row = SweepRow::empty(n, delta, method);
                row.error = Some(e.to_string());
                row
            });
            if config.record_timing {
                row.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            }
            row
        })
        .collect();
    rows.sort_by_key(SweepRow::sort_key);
    Ok(rows)
}
