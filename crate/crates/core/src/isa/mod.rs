//! The seven-instruction QPU: quantum memory slots, a three-cell quantum
//! transistor, and initialization/measurement modules driven by a classical
//! controller.
//!
//! Register layout: memory slots `0..s` followed by transistor cells 0, 1, 2,
//! all qubits. QET and PHASE act on cells (1, 2); CQET acts on cells
//! (0, 1, 2) with cell 0 as control.

mod gates;
mod instruction;
mod machine;
mod validate;

pub use gates::{cqet_matrix, phase_matrix, qet_matrix};
pub use instruction::{Cell, Instruction, Opcode, QuantumProgram};
pub use machine::{run_program, ExecError, ExecFailure, ExecutionTrace, MachineState, RunOutput, TraceRecord};
pub use validate::{validate_program, Diagnostic, Violation};

/// Number of transistors simulated; only id 0 exists.
pub const TRANSISTOR_COUNT: u32 = 1;
