//! Construction of the Gaussian-preparation circuit: an `Ry` layer with a
//! bitwise-exponential angle schedule, a (pruned) QFT, and an `X` on the top
//! qubit that recentres the peak of the distribution.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::reference::GaussianSpec;

/// Gate synthesis (no simulation) accepts registers up to this size.
pub const MAX_SYNTH_QUBITS: usize = 4096;

/// Default pruning threshold in radians.
pub const DEFAULT_DELTA: f64 = 0.0123;

/// The decay-parameter heuristic is `HEURISTIC_BETA_SCALE / lambda`.
pub const HEURISTIC_BETA_SCALE: f64 = 2.5;

pub(crate) fn check_synth_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SYNTH_QUBITS {
        return Err(Error::QubitCount {
            n,
            max: MAX_SYNTH_QUBITS,
        });
    }
    Ok(())
}

/// `Ry` angle for qubit `j`: `2·atan(exp(-beta·j²))`.
///
/// `beta = +inf` is accepted as the limit of a vanishing decay rate: qubit 0
/// keeps `π/2` and every other qubit gets angle 0.
pub fn rotation_angle(j: usize, beta: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::parameter("beta", "positive", beta));
    }
    if j == 0 {
        return Ok(PI / 2.0);
    }
    let jf = j as f64;
    Ok(2.0 * (-beta * jf * jf).exp().atan())
}

pub fn beta_from_lambda(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::parameter("lambda", "positive and finite", lambda));
    }
    Ok(HEURISTIC_BETA_SCALE / lambda)
}

/// `π / 2^d` without intermediate overflow.
pub fn qft_phase(distance: usize) -> f64 {
    if distance > i32::MAX as usize {
        return 0.0;
    }
    PI * 2f64.powi(-(distance as i32))
}

/// Controlled-phase pruning rule for the QFT: a gate of angle `φ` is kept iff `φ >= delta`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruningPolicy {
    delta: f64,
}

impl PruningPolicy {
    pub fn new(delta: f64) -> Result<Self> {
        if delta.is_nan() || delta < 0.0 || delta.is_infinite() {
            return Err(Error::parameter("delta", "finite and non-negative", delta));
        }
        Ok(Self { delta })
    }

    pub fn full() -> Self {
        Self { delta: 0.0 }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Largest bit distance `d` whose phase `π/2^d` survives, or `None` when nothing is pruned.
    pub fn max_distance(&self) -> Option<usize> {
        if self.delta == 0.0 {
            return None;
        }
        let mut d = 0;
        while qft_phase(d + 1) >= self.delta {
            d += 1;
        }
        Some(d)
    }

    pub fn keeps(&self, distance: usize) -> bool {
        qft_phase(distance) >= self.delta
    }

    /// Controlled-phase gates a QFT on `n` qubits retains under this policy.
    pub fn retained_cphase(&self, n: usize) -> usize {
        let reach = self
            .max_distance()
            .unwrap_or(usize::MAX)
            .min(n.saturating_sub(1));
        (1..=reach).map(|d| n - d).sum()
    }

    pub fn pruned_cphase(&self, n: usize) -> usize {
        n * n.saturating_sub(1) / 2 - self.retained_cphase(n)
    }
}

impl Default for PruningPolicy {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
        }
    }
}

/// One `Ry(rotation_angle(j, beta))` on each qubit `j`.
pub fn build_exponential_layer(n: usize, beta: f64) -> Result<Circuit> {
    check_synth_qubits(n)?;
    let mut circuit = Circuit::new(n);
    for j in 0..n {
        circuit.ry(j, rotation_angle(j, beta)?)?;
    }
    Ok(circuit)
}

/// QFT mapping `|j⟩` to `2^{-n/2} Σ_k e^{2πi jk/2^n} |k⟩`.
///
/// Targets are processed from the top qubit down; each gets an `H` followed by
/// controlled phases `π/2^d` from the qubits `d` positions below it. The final
/// layer of `⌊n/2⌋` swaps reverses the bit order. For `delta = 0` angles with
/// `d > 1074` underflow to zero but are still emitted.
pub fn build_qft(n: usize, policy: &PruningPolicy) -> Result<Circuit> {
    check_synth_qubits(n)?;
    let mut circuit = Circuit::new(n);
    for target in (0..n).rev() {
        circuit.h(target)?;
        for control in (0..target).rev() {
            let distance = target - control;
            if policy.keeps(distance) {
                circuit.cphase(control, target, qft_phase(distance))?;
            }
        }
    }
    for i in 0..n / 2 {
        circuit.swap(i, n - 1 - i)?;
    }
    Ok(circuit)
}

/// Decay parameter used by [`build_gaussian_prep`]: the override if given, else the heuristic.
pub fn resolve_beta(spec: &GaussianSpec, beta_override: Option<f64>) -> Result<f64> {
    match beta_override {
        Some(beta) if beta.is_nan() || beta <= 0.0 => {
            Err(Error::parameter("beta", "positive", beta))
        }
        Some(beta) => Ok(beta),
        None => beta_from_lambda(spec.lambda()),
    }
}

/// Exponential layer, then QFT, then `X` on qubit `n-1`.
pub fn build_gaussian_prep(
    n: usize,
    spec: &GaussianSpec,
    policy: &PruningPolicy,
    beta_override: Option<f64>,
) -> Result<Circuit> {
    let beta = resolve_beta(spec, beta_override)?;
    let mut circuit = build_exponential_layer(n, beta)?;
    circuit.append(&build_qft(n, policy)?)?;
    circuit.x(n - 1)?;
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{count_gates, GateKind, GateOp};

    #[test]
    fn angle_examples() {
        assert!((rotation_angle(0, 2.5).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((rotation_angle(0, 0.01).unwrap() - PI / 2.0).abs() < 1e-15);
        // 2·atan(e^{-2.5}) evaluated independently with mpmath
        assert!((rotation_angle(1, 2.5).unwrap() - 0.163_802_757_858_742_87).abs() < 1e-12);
        assert!(rotation_angle(3, 2.5).unwrap() < 1e-9);
        assert!(rotation_angle(1, 0.0).is_err());
        assert!(rotation_angle(1, -1.0).is_err());
        assert_eq!(rotation_angle(4, f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn angles_decrease_in_index_and_beta() {
        for &beta in &[0.05, 0.25, 1.0, 2.5] {
            for j in 0..6 {
                let here = rotation_angle(j, beta).unwrap();
                assert!(rotation_angle(j + 1, beta).unwrap() < here);
                if j > 0 {
                    assert!(rotation_angle(j, beta * 1.5).unwrap() < here);
                }
                assert!(here > 0.0 && here <= PI / 2.0);
            }
        }
    }

    #[test]
    fn beta_heuristic() {
        assert_eq!(beta_from_lambda(1.0).unwrap(), 2.5);
        assert_eq!(beta_from_lambda(2.5).unwrap(), 1.0);
        assert!(beta_from_lambda(0.0).is_err());
        assert!(beta_from_lambda(-3.0).is_err());
    }

    #[test]
    fn exponential_layer_shape() {
        let c = build_exponential_layer(1, 2.5).unwrap();
        assert_eq!(
            c.gates(),
            &[GateOp::Ry {
                qubit: 0,
                angle: PI / 2.0
            }]
        );

        let c = build_exponential_layer(5, 2.5).unwrap();
        assert_eq!(c.len(), 5);
        let mut last = f64::INFINITY;
        for (j, g) in c.gates().iter().enumerate() {
            match *g {
                GateOp::Ry { qubit, angle } => {
                    assert_eq!(qubit, j);
                    assert!(angle < last);
                    last = angle;
                }
                _ => panic!("unexpected gate {g:?}"),
            }
        }
    }

    #[test]
    fn max_distance_boundaries() {
        assert_eq!(PruningPolicy::full().max_distance(), None);
        assert_eq!(PruningPolicy::new(0.0123).unwrap().max_distance(), Some(7));
        assert_eq!(PruningPolicy::new(0.01).unwrap().max_distance(), Some(8));
        assert_eq!(PruningPolicy::new(0.1).unwrap().max_distance(), Some(4));
        assert_eq!(PruningPolicy::new(2.0).unwrap().max_distance(), Some(0));
        // equality keeps the gate
        let exact = PruningPolicy::new(PI / 512.0).unwrap();
        assert_eq!(exact.max_distance(), Some(9));
        assert!(exact.keeps(9));
        assert!(!exact.keeps(10));
        assert!(PruningPolicy::new(-0.1).is_err());
        assert!(PruningPolicy::new(f64::NAN).is_err());
    }

    #[test]
    fn qft_inventories() {
        let inv = count_gates(&build_qft(3, &PruningPolicy::full()).unwrap());
        assert_eq!((inv.h, inv.cphase, inv.swap, inv.total), (3, 3, 1, 7));

        let inv = count_gates(&build_qft(16, &PruningPolicy::full()).unwrap());
        assert_eq!(inv.cphase, 120);

        let policy = PruningPolicy::new(0.0123).unwrap();
        let inv = count_gates(&build_qft(16, &policy).unwrap());
        let oracle: usize = (1..=7).map(|d| 16 - d).sum();
        assert_eq!(oracle, 84);
        assert_eq!(inv.cphase, oracle);
        assert_eq!(policy.pruned_cphase(16), 36);
        assert_eq!(policy.retained_cphase(16), 84);

        assert_eq!(
            count_gates(&build_qft(8, &PruningPolicy::full()).unwrap()).cphase,
            28
        );
    }

    #[test]
    fn gaussian_prep_structure() {
        let spec = GaussianSpec::default();
        let c = build_gaussian_prep(1, &spec, &PruningPolicy::default(), None).unwrap();
        assert_eq!(
            c.gates(),
            &[
                GateOp::Ry {
                    qubit: 0,
                    angle: PI / 2.0
                },
                GateOp::H { qubit: 0 },
                GateOp::X { qubit: 0 }
            ]
        );

        let policy = PruningPolicy::new(0.01).unwrap();
        let c = build_gaussian_prep(5, &spec, &policy, None).unwrap();
        assert!(c.gates()[..5].iter().all(|g| g.kind() == GateKind::Ry));
        assert_eq!(c.gates().last(), Some(&GateOp::X { qubit: 4 }));
        let inv = count_gates(&c);
        assert_eq!(
            (inv.ry, inv.h, inv.cphase, inv.swap, inv.x),
            (5, 5, 10, 2, 1)
        );

        let policy = PruningPolicy::new(0.0123).unwrap();
        let inv = count_gates(&build_gaussian_prep(12, &spec, &policy, None).unwrap());
        let cphase_oracle: usize = (1..=7).map(|d| 12 - d).sum();
        assert_eq!(cphase_oracle, 56);
        assert_eq!((inv.ry, inv.x, inv.swap, inv.cphase), (12, 1, 6, 56));
    }

    #[test]
    fn beta_override_and_errors() {
        let spec = GaussianSpec::new(1.0, -2.0, 2.0).unwrap();
        let a = build_gaussian_prep(4, &spec, &PruningPolicy::full(), Some(0.25)).unwrap();
        assert_eq!(a.gates()[1].angle(), Some(rotation_angle(1, 0.25).unwrap()));
        assert!(build_gaussian_prep(4, &spec, &PruningPolicy::full(), Some(-1.0)).is_err());
        let flat = GaussianSpec::new(0.0, -2.0, 2.0).unwrap();
        assert!(build_gaussian_prep(4, &flat, &PruningPolicy::full(), None).is_err());
        assert!(build_qft(0, &PruningPolicy::full()).is_err());
        assert!(build_qft(MAX_SYNTH_QUBITS + 1, &PruningPolicy::full()).is_err());
    }
}
