//! Exact amplitude encoding of a real non-negative vector, used as the cost and
//! accuracy baseline.
//!
//! The top qubit splits the probability mass between the lower and upper halves
//! of the index range, the next qubit splits each half conditioned on the top
//! one, and so on down to qubit 0. Each level is a uniformly controlled `Ry`
//! decomposed into `2^k` single-qubit `Ry` and `2^k` CNOTs along a Gray-code
//! walk over the `k` controls; each CNOT becomes `H · CPHASE(π) · H` so the
//! circuit stays within the primitive gate set.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::statevector::qubits_for_len;

const NORM_TOLERANCE: f64 = 1e-10;

/// Elementary gates emitted by [`encode_exact`] on `n` qubits: one `Ry` for the
/// top qubit, then `2^k` `Ry` plus `2^k` three-gate CNOTs at each level `k ≥ 1`,
/// i.e. `1 + 4·(2^n − 2)`.
pub fn exact_encoding_gate_count(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    1 + 4 * ((1u128 << n) - 2)
}

pub fn encode_exact(target_amplitudes: &[f64], n: usize) -> Result<Circuit> {
    let len = target_amplitudes.len();
    if qubits_for_len(len)? != n {
        return Err(Error::LengthMismatch {
            left: len,
            right: 1usize << n.min(63),
        });
    }
    if let Some((index, &value)) = target_amplitudes
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_nan() || **v < 0.0)
    {
        return Err(Error::NegativeEntry { index, value });
    }
    let total: f64 = target_amplitudes.iter().map(|a| a * a).sum();
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (total - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized { total });
    }

    let mut circuit = Circuit::new(n);
    let probabilities: Vec<f64> = target_amplitudes.iter().map(|a| a * a).collect();
    for level in 0..n {
        let target = n - 1 - level;
        let block = 1usize << (target + 1);
        let half = block >> 1;
        // one split angle per assignment of the bits above `target`
        let angles: Vec<f64> = probabilities
            .chunks_exact(block)
            .map(|chunk| {
                let lower: f64 = chunk[..half].iter().sum();
                let upper: f64 = chunk[half..].iter().sum();
                split_angle(lower, lower + upper)
            })
            .collect();
        let controls: Vec<usize> = (target + 1..n).collect();
        uniformly_controlled_ry(&mut circuit, &controls, target, &angles)?;
    }
    Ok(circuit)
}

/// `2·acos(√(lower/total))`, the `Ry` angle sending `|0⟩` to the split; 0 for an empty block.
fn split_angle(lower: f64, total: f64) -> f64 {
    if total <= 0.0 {
        return 0.0;
    }
    2.0 * (lower / total).sqrt().min(1.0).acos()
}

/// Applies `Ry(angles[c])` to `target` when the control register (bit `b` of `c`
/// on `controls[b]`) holds `c`.
fn uniformly_controlled_ry(
    circuit: &mut Circuit,
    controls: &[usize],
    target: usize,
    angles: &[f64],
) -> Result<()> {
    let k = controls.len();
    debug_assert_eq!(angles.len(), 1 << k);
    if k == 0 {
        circuit.ry(target, angles[0])?;
        return Ok(());
    }
    let size = 1usize << k;
    let gray = |i: usize| i ^ (i >> 1);
    let scale = 1.0 / size as f64;
    for i in 0..size {
        let g = gray(i);
        // Walsh-Hadamard transform in Gray-code order
        let theta: f64 = angles
            .iter()
            .enumerate()
            .map(|(c, a)| {
                if (c & g).count_ones() % 2 == 0 {
                    *a
                } else {
                    -*a
                }
            })
            .sum::<f64>()
            * scale;
        circuit.ry(target, theta)?;
        let flipped = g ^ gray((i + 1) % size);
        circuit.cnot(controls[flipped.trailing_zeros() as usize], target)?;
    }
    Ok(())
}
