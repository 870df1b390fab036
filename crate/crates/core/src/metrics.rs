//! Error metrics between the prepared state and the discretized Gaussian, and
//! the analytic fidelity bound for QFT pruning.
//!
//! KL divergences are in nats.

use serde::{Deserialize, Serialize};

use crate::circuit::GateInventory;
use crate::error::{Error, Result};
use crate::statevector::StateVector;

/// Mixture weight used by [`kl_divergence_smoothed`] in reports and calibration.
///
/// The prepared distribution is exactly zero on some bins near the domain edge
/// (always at `x = lo`, and on a wider block once the QFT is pruned), so the raw
/// divergence from a full-support target is infinite.
pub const KL_SMOOTHING: f64 = 1e-12;

/// Tolerance on the total mass of probability vectors handed to the KL routines.
const MASS_TOLERANCE: f64 = 1e-6;

fn check_lengths(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if let Some((index, &value)) = p.iter().enumerate().find(|(_, v)| v.is_nan() || **v < 0.0) {
        return Err(Error::NegativeEntry { index, value });
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Unnormalized { total });
    }
    Ok(())
}

/// `2^{-n} Σ_k (t_k - |β_k|)²`, comparing target amplitudes to the magnitudes of the state.
pub fn mse(target_amplitudes: &[f64], state: &StateVector) -> Result<f64> {
    check_lengths(target_amplitudes.len(), state.len())?;
    let sum: f64 = target_amplitudes
        .iter()
        .zip(state.amplitudes())
        .map(|(t, b)| (t - b.norm()).powi(2))
        .sum();
    Ok(sum / state.len() as f64)
}

/// `min_γ 2^{-n} Σ_k |t_k - e^{iγ} β_k|²`: the complex MSE after the best global phase.
pub fn mse_phase_optimized(target_amplitudes: &[f64], state: &StateVector) -> Result<f64> {
    check_lengths(target_amplitudes.len(), state.len())?;
    let target_mass: f64 = target_amplitudes.iter().map(|t| t * t).sum();
    let overlap: num_complex::Complex64 = target_amplitudes
        .iter()
        .zip(state.amplitudes())
        .map(|(t, b)| b * *t)
        .sum();
    let sum = target_mass + state.norm_sqr() - 2.0 * overlap.norm();
    Ok(sum.max(0.0) / state.len() as f64)
}

/// `Σ_x p_x ln(p_x / q_x)` with `0·ln(0/q) = 0`. Returns `+inf` when `q` vanishes
/// somewhere `p` does not.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    check_lengths(p.len(), q.len())?;
    check_distribution(p)?;
    check_distribution(q)?;
    let mut total = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += pi * (pi / qi).ln();
    }
    Ok(total.max(0.0))
}

/// KL divergence against `(1 - epsilon)·q + epsilon/len`, which has full support
/// for any `epsilon > 0`.
pub fn kl_divergence_smoothed(p: &[f64], q: &[f64], epsilon: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::parameter("epsilon", "within [0, 1]", epsilon));
    }
    check_lengths(p.len(), q.len())?;
    check_distribution(q)?;
    let floor = epsilon / q.len() as f64;
    let mixed: Vec<f64> = q.iter().map(|qi| (1.0 - epsilon) * qi + floor).collect();
    kl_divergence(p, &mixed)
}

/// `|⟨a|b⟩|²`, clamped to `[0, 1]` against rounding.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner_product(b)?.norm_sqr().clamp(0.0, 1.0))
}

/// `(Σ_k t_k |β_k|)²`: fidelity between the target and the state with its
/// per-amplitude phases discarded. Equals the classical fidelity of the two
/// probability distributions.
pub fn profile_fidelity(target_amplitudes: &[f64], state: &StateVector) -> Result<f64> {
    check_lengths(target_amplitudes.len(), state.len())?;
    let overlap: f64 = target_amplitudes
        .iter()
        .zip(state.amplitudes())
        .map(|(t, b)| t * b.norm())
        .sum();
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

/// `|⟨target|ψ⟩|²` against real target amplitudes, phases included.
pub fn coherent_fidelity(target_amplitudes: &[f64], state: &StateVector) -> Result<f64> {
    fidelity(&StateVector::from_real(target_amplitudes)?, state)
}

/// Lower bound on the fidelity between full-QFT and pruned-QFT outputs:
/// `1 - (n-1)²δ²/4`, or the looser `1 - n²δ²/4`.
pub fn pruning_fidelity_bound(n: usize, delta: f64, loose: bool) -> f64 {
    let width = if loose { n } else { n.saturating_sub(1) } as f64;
    1.0 - width * width * delta * delta / 4.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub num_qubits: usize,
    pub lambda: f64,
    pub beta: f64,
    pub delta: f64,
    /// Magnitude MSE against the target amplitudes.
    pub mse_amplitude: f64,
    pub mse_phase_optimized: f64,
    /// Raw divergence of the prepared distribution from the target; may be `inf`.
    pub kl_divergence: f64,
    /// Divergence with [`KL_SMOOTHING`] applied to the prepared distribution.
    pub kl_smoothed: f64,
    /// [`profile_fidelity`] to the target.
    pub fidelity: f64,
    /// [`coherent_fidelity`] to the target.
    pub coherent_fidelity: f64,
    /// Fidelity of this pruned circuit's output to the unpruned circuit's output.
    pub qft_fidelity: f64,
    pub fidelity_bound: f64,
    pub inventory: GateInventory,
}
