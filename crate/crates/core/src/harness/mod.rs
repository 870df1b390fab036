//! Experiment drivers behind the command-line tool: single-configuration runs,
//! decay-parameter calibration, parameter sweeps, sampling and QASM export.

mod calibrate;
mod output;
mod qasm;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::count_gates;
use crate::error::{Error, Result};
use crate::metrics::{
    coherent_fidelity, fidelity, kl_divergence, kl_divergence_smoothed, mse, mse_phase_optimized,
    profile_fidelity, pruning_fidelity_bound, MetricsReport, KL_SMOOTHING,
};
use crate::reference::{grid_points, target_distribution, GaussianSpec, TargetDistribution};
use crate::statevector::{check_sim_qubits, simulate, StateVector};
use crate::synthesis::{beta_from_lambda, build_gaussian_prep, PruningPolicy};

pub use calibrate::{
    calibrate_beta, Calibration, CalibrationObjective, CalibrationPoint, BETA_SEARCH_RANGE,
    CALIBRATION_MAX_QUBITS, REPORTED_EXPERIMENT_BETA,
};
pub use output::{
    calibration_rows, distribution_rows, sample_rows, write_calibration_csv,
    write_distribution_csv, write_json, write_report_csv, write_samples_csv, write_sweep_csv,
    CalibrationRow, DistributionRow, ReportRow, SampleRow, CALIBRATION_COLUMNS,
    DISTRIBUTION_COLUMNS, REPORT_COLUMNS, SAMPLE_COLUMNS, SWEEP_COLUMNS,
};
pub use qasm::export_qasm;
pub use sweep::{
    run_sweep, SweepConfig, SweepRow, BASELINE_SIM_MAX_QUBITS, METHOD_BASELINE, METHOD_QFT,
};

/// How the decay parameter of the `Ry` layer is chosen.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BetaMode {
    /// `2.5 / lambda`; a flat target (`lambda = 0`) maps to `beta = inf`.
    Heuristic,
    /// KL-minimizing value from [`calibrate_beta`] on the unpruned circuit.
    Calibrated,
    Explicit(f64),
}

impl BetaMode {
    pub fn resolve(&self, spec: &GaussianSpec, n: usize) -> Result<f64> {
        match *self {
            BetaMode::Heuristic if spec.lambda() == 0.0 => Ok(f64::INFINITY),
            BetaMode::Heuristic => beta_from_lambda(spec.lambda()),
            BetaMode::Calibrated => {
                Ok(calibrate_beta(spec, n, &PruningPolicy::full(), CalibrationObjective::Kl)?.beta)
            }
            BetaMode::Explicit(beta) if beta.is_nan() || beta <= 0.0 => {
                Err(Error::parameter("beta", "positive", beta))
            }
            BetaMode::Explicit(beta) => Ok(beta),
        }
    }
}

impl FromStr for BetaMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "heuristic" => Ok(BetaMode::Heuristic),
            "calibrated" => Ok(BetaMode::Calibrated),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|b| *b > 0.0)
                .map(BetaMode::Explicit)
                .ok_or_else(|| {
                    format!(
                        "expected `heuristic`, `calibrated` or a positive number, got `{other}`"
                    )
                }),
        }
    }
}

impl fmt::Display for BetaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaMode::Heuristic => f.write_str("heuristic"),
            BetaMode::Calibrated => f.write_str("calibrated"),
            BetaMode::Explicit(b) => write!(f, "{b}"),
        }
    }
}

/// Everything produced by simulating one configuration of the preparation circuit.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub report: MetricsReport,
    pub state: StateVector,
    pub target: TargetDistribution,
    pub grid: Vec<f64>,
}

impl Evaluation {
    pub fn prepared_probabilities(&self) -> Vec<f64> {
        self.state.probabilities()
    }
}

/// Builds, simulates and scores the preparation circuit for a fixed `beta`.
pub fn evaluate(
    n: usize,
    spec: &GaussianSpec,
    policy: &PruningPolicy,
    beta: f64,
) -> Result<Evaluation> {
    check_sim_qubits(n)?;
    let circuit = build_gaussian_prep(n, spec, policy, Some(beta))?;
    let inventory = count_gates(&circuit).with_pruned(policy.pruned_cphase(n));
    let state = simulate(&circuit)?;

    let qft_fidelity = if inventory.pruned_cphase == 0 {
        1.0
    } else {
        let full = simulate(&build_gaussian_prep(
            n,
            spec,
            &PruningPolicy::full(),
            Some(beta),
        )?)?;
        fidelity(&full, &state)?
    };

    let target = target_distribution(spec, n)?;
    let prepared = state.probabilities();
    let report = MetricsReport {
        num_qubits: n,
        lambda: spec.lambda(),
        beta,
        delta: policy.delta(),
        mse_amplitude: mse(&target.amplitudes, &state)?,
        mse_phase_optimized: mse_phase_optimized(&target.amplitudes, &state)?,
        kl_divergence: kl_divergence(&target.probabilities, &prepared)?,
        kl_smoothed: kl_divergence_smoothed(&target.probabilities, &prepared, KL_SMOOTHING)?,
        fidelity: profile_fidelity(&target.amplitudes, &state)?,
        coherent_fidelity: coherent_fidelity(&target.amplitudes, &state)?,
        qft_fidelity,
        fidelity_bound: pruning_fidelity_bound(n, policy.delta(), false),
        inventory,
    };
    Ok(Evaluation {
        report,
        state,
        target,
        grid: grid_points(n, spec)?.points,
    })
}

/// Resolves the decay parameter and runs [`evaluate`].
pub fn run_prepare(
    n: usize,
    spec: &GaussianSpec,
    delta: f64,
    beta_mode: BetaMode,
) -> Result<Evaluation> {
    check_sim_qubits(n)?;
    let policy = PruningPolicy::new(delta)?;
    let beta = beta_mode.resolve(spec, n)?;
    evaluate(n, spec, &policy, beta)
}
