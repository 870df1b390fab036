//! Dense statevector simulation of the primitive gate set.
//!
//! Basis index bit `j` has significance `2^j` and corresponds to qubit `j`.
//! Global phase is never normalized away.

use num_complex::Complex64;

use crate::circuit::{Circuit, GateOp};
use crate::error::{Error, Result};

pub type Amplitude = Complex64;

/// Largest register that will be allocated (2^26 amplitudes, about 1 GiB).
pub const MAX_SIM_QUBITS: usize = 26;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

pub(crate) fn check_sim_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SIM_QUBITS {
        return Err(Error::QubitCount {
            n,
            max: MAX_SIM_QUBITS,
        });
    }
    Ok(())
}

/// Number of qubits for a power-of-two length, if it is one within the simulation cap.
pub(crate) fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let n = len.trailing_zeros() as usize;
    check_sim_qubits(n)?;
    Ok(n)
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_sim_qubits(n)?;
        let len = 1usize << n;
        if index >= len {
            return Err(Error::LengthMismatch {
                left: index,
                right: len,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes. The vector must have power-of-two length and unit norm
    /// (within 1e-8).
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let total: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !total.is_finite() || (total - 1.0).abs() > 1e-8 {
            return Err(Error::Unnormalized { total });
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `Σ_k conj(self_k) · other_k`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Amplitude> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match *gate {
            GateOp::Ry { qubit, angle } => {
                let (s, c) = (angle / 2.0).sin_cos();
                self.apply_pairs(qubit, |a, b| (c * a - s * b, s * a + c * b));
            }
            GateOp::H { qubit } => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_pairs(qubit, |a, b| ((a + b) * r, (a - b) * r));
            }
            GateOp::X { qubit } => self.apply_pairs(qubit, |a, b| (b, a)),
            GateOp::CPhase {
                control,
                target,
                angle,
            } => self.apply_cphase(control, target, angle),
            GateOp::Swap { a, b } => self.apply_swap(a, b),
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: circuit.num_qubits(),
            });
        }
        for gate in circuit.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    /// Applies a 2x2 update to every amplitude pair `(i, i | 2^qubit)` with bit `qubit` clear.
    fn apply_pairs<F>(&mut self, qubit: usize, f: F)
    where
        F: Fn(Amplitude, Amplitude) -> (Amplitude, Amplitude),
    {
        let stride = 1usize << qubit;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (na, nb) = f(*a, *b);
                *a = na;
                *b = nb;
            }
        }
    }

    fn apply_cphase(&mut self, q1: usize, q2: usize, angle: f64) {
        let mask = (1usize << q1) | (1usize << q2);
        let phase = Complex64::from_polar(1.0, angle);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    fn apply_swap(&mut self, q1: usize, q2: usize) {
        let (m1, m2) = (1usize << q1, 1usize << q2);
        for i in 0..self.amplitudes.len() {
            // visit each (10, 01) pair once from the side with q1 set
            if i & m1 != 0 && i & m2 == 0 {
                self.amplitudes.swap(i, (i ^ m1) | m2);
            }
        }
    }
}

/// Simulates `circuit` from `|0…0⟩`.
pub fn simulate(circuit: &Circuit) -> Result<StateVector> {
    let mut state = StateVector::zero(circuit.num_qubits())?;
    state.apply_circuit(circuit)?;
    Ok(state)
}
