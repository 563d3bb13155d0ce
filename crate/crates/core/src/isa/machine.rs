use alloc::vec::Vec;

use num_complex::Complex64;
use thiserror::Error;

use super::validate::Occupancy;
use super::{cqet_matrix, phase_matrix, qet_matrix, Instruction, Opcode, QuantumProgram, Violation};
use crate::sim::{LocalUnitary, RandomSource, SimError, StateVector, SubsystemShape};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExecFailure {
    #[error(transparent)]
    Precondition(#[from] Violation),
    #[error("register error: {0}")]
    Register(#[from] SimError),
}

/// Runtime failure of one instruction; the machine is left unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("instruction {index} ({opcode}): {failure}")]
pub struct ExecError {
    pub index: usize,
    pub opcode: Opcode,
    pub failure: ExecFailure,
}

/// Occupancy snapshot taken after one executed instruction.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub index: usize,
    pub instruction: Instruction,
    pub memory_occupied: Vec<bool>,
    pub cell_occupied: [bool; 3],
    pub outcome: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExecutionTrace {
    pub records: Vec<TraceRecord>,
}

impl ExecutionTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// `(memory address, bit)` in execution order.
    pub results: Vec<(usize, bool)>,
    pub trace: ExecutionTrace,
}

/// Register plus occupancy bookkeeping of a QPU.
///
/// Free slots and cells are always `|0>` and unentangled with the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineState {
    memory_size: usize,
    register: StateVector,
    occupancy: Occupancy,
    classical_results: Vec<(usize, bool)>,
}

fn swap_gate() -> LocalUnitary {
    LocalUnitary::from_fn([2, 2], |r, c| match (r, c) {
        (0, 0) | (3, 3) | (1, 2) | (2, 1) => Complex64::ONE,
        _ => Complex64::ZERO,
    })
    .expect("4x4")
}

fn flip_gate() -> LocalUnitary {
    LocalUnitary::from_fn([2], |r, c| if r != c { Complex64::ONE } else { Complex64::ZERO })
        .expect("2x2")
}

impl MachineState {
    pub fn new(memory_size: usize) -> Self {
        let shape = SubsystemShape::qubits(memory_size + 3).expect("at least three qubits");
        let register = StateVector::basis_state(shape, &alloc::vec![0; memory_size + 3])
            .expect("ground state");
        Self {
            memory_size,
            register,
            occupancy: Occupancy::new(memory_size),
            classical_results: Vec::new(),
        }
    }

    pub fn memory_size(&self) -> usize {
        self.memory_size
    }

    /// Register over `s` memory qubits followed by cells 0, 1, 2.
    pub fn register(&self) -> &StateVector {
        &self.register
    }

    pub fn memory_occupied(&self) -> &[bool] {
        &self.occupancy.memory
    }

    pub fn cell_occupied(&self) -> [bool; 3] {
        self.occupancy.cells
    }

    pub fn classical_results(&self) -> &[(usize, bool)] {
        &self.classical_results
    }

    /// Register subsystem index of transistor cell `cell`.
    pub fn cell_qubit(&self, cell: usize) -> usize {
        self.memory_size + cell
    }

    /// Executes one instruction. `index` is only used to label errors.
    pub fn execute(
        &mut self,
        index: usize,
        instr: &Instruction,
        rng: &mut RandomSource,
    ) -> Result<TraceRecord, ExecError> {
        let fail = |failure: ExecFailure| ExecError { index, opcode: instr.opcode(), failure };
        self.occupancy.check(instr).map_err(|v| fail(v.into()))?;
        let (register, outcome) = self.transform(instr, rng).map_err(|e| fail(e.into()))?;
        self.register = register;
        self.occupancy.apply(instr);
        if let (Some(bit), Some(addr)) = (outcome, instr.memory_addr()) {
            self.classical_results.push((addr, bit));
        }
        Ok(TraceRecord {
            index,
            instruction: *instr,
            memory_occupied: self.occupancy.memory.clone(),
            cell_occupied: self.occupancy.cells,
            outcome,
        })
    }

    fn transform(
        &self,
        instr: &Instruction,
        rng: &mut RandomSource,
    ) -> Result<(StateVector, Option<bool>), SimError> {
        let reg = &self.register;
        let cells = |ids: &[usize]| ids.iter().map(|&c| self.cell_qubit(c)).collect::<Vec<_>>();
        let next = match *instr {
            Instruction::Init { addr, value } => {
                if value {
                    reg.apply_local(&flip_gate(), &[addr])?
                } else {
                    reg.clone()
                }
            }
            Instruction::Load { addr, cell } | Instruction::Save { cell, addr } => {
                reg.apply_local(&swap_gate(), &[addr, self.cell_qubit(cell.index())])?
            }
            Instruction::Qet { theta, .. } => reg.apply_local(&qet_matrix(theta), &cells(&[1, 2]))?,
            Instruction::Phase { theta, phi, .. } => {
                reg.apply_local(&phase_matrix(theta, phi), &cells(&[1, 2]))?
            }
            Instruction::Cqet { .. } => reg.apply_local(&cqet_matrix(), &cells(&[0, 1, 2]))?,
            Instruction::Measure { addr } => {
                let (outcome, collapsed) = reg.measure_subsystem(addr, rng)?;
                let reset = if outcome == 1 {
                    collapsed.apply_local(&flip_gate(), &[addr])?
                } else {
                    collapsed
                };
                return Ok((reset, Some(outcome == 1)));
            }
        };
        Ok((next, None))
    }
}

/// Runs a program on a fresh machine, aborting at the first failing
/// instruction.
pub fn run_program(program: &QuantumProgram, rng: &mut RandomSource) -> Result<RunOutput, ExecError> {
    let mut machine = MachineState::new(program.memory_size);
    let mut trace = ExecutionTrace::default();
    for (index, instr) in program.instructions.iter().enumerate() {
        trace.records.push(machine.execute(index, instr, rng)?);
    }
    Ok(RunOutput { results: machine.classical_results, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isa::Cell;
    use alloc::vec;
    use core::f64::consts::PI;

    fn load_pair_program(theta: f64) -> Vec<Instruction> {
        vec![
            Instruction::Init { addr: 0, value: false },
            Instruction::Init { addr: 1, value: true },
            Instruction::Load { addr: 0, cell: Cell::FIRST },
            Instruction::Load { addr: 1, cell: Cell::SECOND },
            Instruction::Qet { theta, transistor: 0 },
            Instruction::Save { cell: Cell::FIRST, addr: 0 },
            Instruction::Save { cell: Cell::SECOND, addr: 1 },
        ]
    }

    #[test]
    fn init_zero_leaves_register_in_ground_state() {
        let mut m = MachineState::new(2);
        let before = m.register().clone();
        m.execute(0, &Instruction::Init { addr: 0, value: false }, &mut RandomSource::new(0))
            .unwrap();
        assert_eq!(m.register(), &before);
        assert_eq!(m.memory_occupied(), [true, false]);
    }

    #[test]
    fn load_twice_from_same_slot_fails() {
        let mut m = MachineState::new(1);
        let mut rng = RandomSource::new(0);
        m.execute(0, &Instruction::Init { addr: 0, value: false }, &mut rng).unwrap();
        m.execute(1, &Instruction::Load { addr: 0, cell: Cell::FIRST }, &mut rng).unwrap();
        let snapshot = m.clone();
        let err = m.execute(2, &Instruction::Load { addr: 0, cell: Cell::SECOND }, &mut rng);
        let err = err.unwrap_err();
        assert_eq!(err.index, 2);
        assert_eq!(err.opcode, Opcode::Load);
        assert_eq!(err.failure, ExecFailure::Precondition(Violation::SlotUnoccupied { addr: 0 }));
        assert_eq!(m, snapshot);
    }

    #[test]
    fn full_transfer_then_measure_gives_one() {
        let mut instrs = load_pair_program(PI);
        instrs.push(Instruction::Measure { addr: 0 });
        let program = QuantumProgram::new(2, instrs);
        for seed in 0..20 {
            let out = run_program(&program, &mut RandomSource::new(seed)).unwrap();
            assert_eq!(out.results, [(0, true)]);
        }
    }

    #[test]
    fn measure_resets_slot() {
        let program = QuantumProgram::new(
            1,
            vec![
                Instruction::Init { addr: 0, value: true },
                Instruction::Measure { addr: 0 },
            ],
        );
        let mut rng = RandomSource::new(5);
        let mut m = MachineState::new(1);
        for (i, instr) in program.instructions.iter().enumerate() {
            m.execute(i, instr, &mut rng).unwrap();
        }
        assert_eq!(m.classical_results(), [(0, true)]);
        assert_eq!(m.register(), MachineState::new(1).register());
        assert_eq!(m.memory_occupied(), [false]);
    }

    #[test]
    fn trace_has_one_record_per_instruction() {
        let program = QuantumProgram::new(2, load_pair_program(0.3));
        let out = run_program(&program, &mut RandomSource::new(1)).unwrap();
        assert_eq!(out.trace.len(), program.instructions.len());
        let last = out.trace.records.last().unwrap();
        assert_eq!(last.memory_occupied, [true, true]);
        assert_eq!(last.cell_occupied, [false; 3]);
    }

    #[test]
    fn runtime_error_carries_index() {
        let program = QuantumProgram::new(
            2,
            vec![Instruction::Init { addr: 0, value: false }, Instruction::Measure { addr: 1 }],
        );
        let err = run_program(&program, &mut RandomSource::new(0)).unwrap_err();
        assert_eq!(err.index, 1);
        assert_eq!(err.opcode, Opcode::Measure);
    }

    #[test]
    fn empty_program_has_no_results() {
        let out = run_program(&QuantumProgram::default(), &mut RandomSource::new(0)).unwrap();
        assert!(out.results.is_empty());
        assert!(out.trace.is_empty());
    }
}
