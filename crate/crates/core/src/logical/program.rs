use alloc::vec::Vec;

use super::encoding::{encode_init, LogicalQubitMap};
use super::gates::{logical_rx, logical_rz, synthesize_logical_cnot};
use super::su2::{decompose_su2, Mat2};
use super::LogicalError;
use crate::isa::{Instruction, QuantumProgram};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogicalGate {
    Rx { qubit: usize, theta: f64 },
    Rz { qubit: usize, theta: f64 },
    Cnot { control: usize, target: usize },
    Su2 { qubit: usize, matrix: Mat2 },
}

impl LogicalGate {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            Self::Rx { qubit, .. } | Self::Rz { qubit, .. } | Self::Su2 { qubit, .. } => alloc::vec![qubit],
            Self::Cnot { control, target } => alloc::vec![control, target],
        }
    }
}

/// Gates followed by terminal measurements. Every qubit starts in `|0_L>`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LogicalProgram {
    pub qubits: usize,
    pub gates: Vec<LogicalGate>,
    pub measured: Vec<usize>,
}

impl LogicalProgram {
    pub fn validate(&self) -> Result<(), LogicalError> {
        let in_range = |id: usize| {
            if id < self.qubits { Ok(()) } else { Err(LogicalError::OutOfRange { id, count: self.qubits }) }
        };
        for gate in &self.gates {
            gate.operands().into_iter().try_for_each(in_range)?;
            match gate {
                LogicalGate::Cnot { control, target } if control == target => {
                    return Err(LogicalError::SameOperands)
                }
                LogicalGate::Su2 { matrix, .. } => {
                    decompose_su2(matrix)?;
                }
                _ => {}
            }
        }
        for (k, &q) in self.measured.iter().enumerate() {
            in_range(q)?;
            if self.measured[..k].contains(&q) {
                return Err(LogicalError::DuplicateMeasurement(q));
            }
        }
        Ok(())
    }
}

/// Physical sequence for one gate. SU(2) gates become `Rz(c)`, `Rx(b)`, `Rz(a)`.
pub fn compile_gate(map: &LogicalQubitMap, gate: &LogicalGate) -> Result<Vec<Instruction>, LogicalError> {
    match *gate {
        LogicalGate::Rx { qubit, theta } => logical_rx(map, qubit, theta),
        LogicalGate::Rz { qubit, theta } => logical_rz(map, qubit, theta),
        LogicalGate::Cnot { control, target } => synthesize_logical_cnot(map, control, target),
        LogicalGate::Su2 { qubit, matrix } => {
            let d = decompose_su2(&matrix)?;
            let mut out = logical_rz(map, qubit, d.c)?;
            out.extend(logical_rx(map, qubit, d.b)?);
            out.extend(logical_rz(map, qubit, d.a)?);
            Ok(out)
        }
    }
}

/// Encoded inits, compiled gates, then both physical qubits of each measured
/// pair (first qubit first; it carries the logical value).
pub fn transform_program(lp: &LogicalProgram, map: &LogicalQubitMap) -> Result<QuantumProgram, LogicalError> {
    lp.validate()?;
    let mut out = Vec::new();
    for q in 0..lp.qubits {
        out.extend(encode_init(map, q, false)?);
    }
    for gate in &lp.gates {
        out.extend(compile_gate(map, gate)?);
    }
    for &q in &lp.measured {
        let (first, second) = map.pair(q)?;
        out.push(Instruction::Measure { addr: first });
        out.push(Instruction::Measure { addr: second });
    }
    let memory_size = if lp.qubits == 0 { 0 } else { map.memory_size() };
    Ok(QuantumProgram::new(memory_size, out))
}
