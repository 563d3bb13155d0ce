//! Encoded logical qubits over pairs of physical memory slots.
//!
//! `|0_L> = |01>` and `|1_L> = |10>`; the logical value is the value of the
//! first physical qubit of the pair.

mod action;
mod encoding;
mod gates;
mod program;
mod su2;

use thiserror::Error;

use crate::isa::ExecError;

pub use action::{distance_up_to_phase, leakage_check, logical_action, LEAKAGE_TOL};
pub use encoding::{encode_init, LogicalQubitMap};
pub use gates::{
    logical_phase, logical_rx, logical_rz, solve_cnot_constants, synthesize_logical_cnot, CNOT_CONTROL_PHASE,
    CNOT_TARGET_PRE_QET,
};
pub use program::{compile_gate, transform_program, LogicalGate, LogicalProgram};
pub use su2::{decompose_su2, mat_mul, rx, rz, Mat2, Su2Decomposition};

/// The transistor every compiled sequence runs on.
pub const TRANSISTOR: u32 = 0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LogicalError {
    #[error("logical qubit {0} has no physical pair")]
    Unassigned(usize),
    #[error("logical qubit {0} is already assigned")]
    AlreadyAssigned(usize),
    #[error("physical address {addr} is used by more than one pair")]
    PairOverlap { addr: usize },
    #[error("a pair needs two distinct physical addresses")]
    DegeneratePair,
    #[error("logical qubit {id} out of range for {count} qubits")]
    OutOfRange { id: usize, count: usize },
    #[error("control and target must differ")]
    SameOperands,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("non-finite gate parameter")]
    NonFinite,
    #[error("logical qubit {0} measured twice")]
    DuplicateMeasurement(usize),
    #[error("execution failed: {0}")]
    Exec(#[from] ExecError),
}
