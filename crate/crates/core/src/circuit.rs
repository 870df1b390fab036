//! Gate and circuit containers shared by the synthesizers and the simulator.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Ry,
    H,
    X,
    CPhase,
    Swap,
}

impl GateKind {
    pub const ALL: [GateKind; 5] = [
        GateKind::Ry,
        GateKind::H,
        GateKind::X,
        GateKind::CPhase,
        GateKind::Swap,
    ];
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::Ry => "RY",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::CPhase => "CPHASE",
            GateKind::Swap => "SWAP",
        };
        f.write_str(s)
    }
}

/// A primitive gate. Angles are in radians.
///
/// `Ry` follows the usual `[[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]` convention and
/// `CPhase` multiplies the amplitude of `|11⟩` on its two qubits by `e^{iφ}`, so the
/// control/target labels only matter for display.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateOp {
    Ry {
        qubit: usize,
        angle: f64,
    },
    H {
        qubit: usize,
    },
    X {
        qubit: usize,
    },
    CPhase {
        control: usize,
        target: usize,
        angle: f64,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl GateOp {
    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::Ry { .. } => GateKind::Ry,
            GateOp::H { .. } => GateKind::H,
            GateOp::X { .. } => GateKind::X,
            GateOp::CPhase { .. } => GateKind::CPhase,
            GateOp::Swap { .. } => GateKind::Swap,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateOp::Ry { angle, .. } | GateOp::CPhase { angle, .. } => Some(angle),
            _ => None,
        }
    }

    /// Qubits touched by the gate, in declaration order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::Ry { qubit, .. } | GateOp::H { qubit } | GateOp::X { qubit } => vec![qubit],
            GateOp::CPhase {
                control, target, ..
            } => vec![control, target],
            GateOp::Swap { a, b } => vec![a, b],
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q >= num_qubits {
                return Err(Error::QubitIndex {
                    qubit: q,
                    num_qubits,
                });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedQubit(qubits[0]));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<GateOp>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn ry(&mut self, qubit: usize, angle: f64) -> Result<&mut Self> {
        self.push(GateOp::Ry { qubit, angle })?;
        Ok(self)
    }

    pub fn h(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(GateOp::H { qubit })?;
        Ok(self)
    }

    pub fn x(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(GateOp::X { qubit })?;
        Ok(self)
    }

    pub fn cphase(&mut self, control: usize, target: usize, angle: f64) -> Result<&mut Self> {
        self.push(GateOp::CPhase {
            control,
            target,
            angle,
        })?;
        Ok(self)
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.push(GateOp::Swap { a, b })?;
        Ok(self)
    }

    /// CNOT expressed in the primitive set as `H(t) · CPHASE(c, t, π) · H(t)`.
    pub fn cnot(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.h(target)?
            .cphase(control, target, std::f64::consts::PI)?
            .h(target)
    }

    /// Appends every gate of `other`; both circuits must act on the same register size.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn concat(mut self, other: &Circuit) -> Result<Circuit> {
        self.append(other)?;
        Ok(self)
    }
}

/// Per-kind gate tally.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateInventory {
    pub ry: usize,
    pub h: usize,
    pub x: usize,
    pub cphase: usize,
    pub swap: usize,
    pub total: usize,
    /// Controlled-phase gates dropped by pruning; only known to the synthesizer.
    pub pruned_cphase: usize,
}

impl GateInventory {
    pub fn count(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::Ry => self.ry,
            GateKind::H => self.h,
            GateKind::X => self.x,
            GateKind::CPhase => self.cphase,
            GateKind::Swap => self.swap,
        }
    }

    pub fn with_pruned(mut self, pruned_cphase: usize) -> Self {
        self.pruned_cphase = pruned_cphase;
        self
    }
}

pub fn count_gates(circuit: &Circuit) -> GateInventory {
    let mut inv = GateInventory::default();
    for gate in circuit.gates() {
        match gate.kind() {
            GateKind::Ry => inv.ry += 1,
            GateKind::H => inv.h += 1,
            GateKind::X => inv.x += 1,
            GateKind::CPhase => inv.cphase += 1,
            GateKind::Swap => inv.swap += 1,
        }
    }
    inv.total = inv.ry + inv.h + inv.x + inv.cphase + inv.swap;
    inv
}
