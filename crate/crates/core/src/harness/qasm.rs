use std::fmt::Write;

use crate::circuit::{Circuit, GateOp};

/// Renders `circuit` as OpenQASM 2.0 over a single register `q`, qubit `j` as
/// `q[j]`. Angles carry 17 significant digits so they parse back bit-exact.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        let _ = match *gate {
            GateOp::Ry { qubit, angle } => writeln!(out, "ry({angle:.16e}) q[{qubit}];"),
            GateOp::H { qubit } => writeln!(out, "h q[{qubit}];"),
            GateOp::X { qubit } => writeln!(out, "x q[{qubit}];"),
            GateOp::CPhase {
                control,
                target,
                angle,
            } => writeln!(out, "cu1({angle:.16e}) q[{control}],q[{target}];"),
            GateOp::Swap { a, b } => writeln!(out, "swap q[{a}],q[{b}];"),
        };
    }
    out
}
