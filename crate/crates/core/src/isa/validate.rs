use alloc::vec::Vec;

use thiserror::Error;

use super::{Instruction, Opcode, QuantumProgram, TRANSISTOR_COUNT};

/// A broken instruction precondition.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Violation {
    #[error("address out of range: m{addr} with memory size {size}")]
    AddressOutOfRange { addr: usize, size: usize },
    #[error("slot occupied: m{addr}")]
    SlotOccupied { addr: usize },
    #[error("slot unoccupied: m{addr}")]
    SlotUnoccupied { addr: usize },
    #[error("cell occupied: c{cell}")]
    CellOccupied { cell: usize },
    #[error("cell unoccupied: c{cell}")]
    CellUnoccupied { cell: usize },
    #[error("transistor cells unoccupied: {opcode} needs cells {needs}")]
    TransistorCellsUnoccupied { opcode: Opcode, needs: &'static str },
    #[error("no transistor with id {id}")]
    UnknownTransistor { id: u32 },
    #[error("non-finite parameter {name}")]
    NonFiniteParameter { name: &'static str },
}

/// A violation attributed to an instruction.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("instruction {index} ({opcode}): {violation}")]
pub struct Diagnostic {
    pub index: usize,
    pub opcode: Opcode,
    pub violation: Violation,
}

/// Occupancy flags of memory slots and transistor cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Occupancy {
    pub memory: Vec<bool>,
    pub cells: [bool; 3],
}

impl Occupancy {
    pub fn new(memory_size: usize) -> Self {
        Self { memory: alloc::vec![false; memory_size], cells: [false; 3] }
    }

    fn slot(&self, addr: usize) -> Result<bool, Violation> {
        self.memory
            .get(addr)
            .copied()
            .ok_or(Violation::AddressOutOfRange { addr, size: self.memory.len() })
    }

    /// Checks every precondition of `instr` without changing anything.
    pub fn check(&self, instr: &Instruction) -> Result<(), Violation> {
        if let Some(id) = instr.transistor() {
            if id >= TRANSISTOR_COUNT {
                return Err(Violation::UnknownTransistor { id });
            }
        }
        match *instr {
            Instruction::Init { addr, .. } => {
                if self.slot(addr)? {
                    return Err(Violation::SlotOccupied { addr });
                }
            }
            Instruction::Load { addr, cell } => {
                if !self.slot(addr)? {
                    return Err(Violation::SlotUnoccupied { addr });
                }
                if self.cells[cell.index()] {
                    return Err(Violation::CellOccupied { cell: cell.index() });
                }
            }
            Instruction::Save { cell, addr } => {
                if !self.cells[cell.index()] {
                    return Err(Violation::CellUnoccupied { cell: cell.index() });
                }
                if self.slot(addr)? {
                    return Err(Violation::SlotOccupied { addr });
                }
            }
            Instruction::Qet { theta, .. } => {
                finite("theta", theta)?;
                self.pair_loaded(Opcode::Qet)?;
            }
            Instruction::Phase { theta, phi, .. } => {
                finite("theta", theta)?;
                finite("phi", phi)?;
                self.pair_loaded(Opcode::Phase)?;
            }
            Instruction::Cqet { .. } => {
                if !self.cells.iter().all(|&c| c) {
                    return Err(Violation::TransistorCellsUnoccupied {
                        opcode: Opcode::Cqet,
                        needs: "0, 1 and 2",
                    });
                }
            }
            Instruction::Measure { addr } => {
                if !self.slot(addr)? {
                    return Err(Violation::SlotUnoccupied { addr });
                }
            }
        }
        Ok(())
    }

    fn pair_loaded(&self, opcode: Opcode) -> Result<(), Violation> {
        if self.cells[1] && self.cells[2] {
            Ok(())
        } else {
            Err(Violation::TransistorCellsUnoccupied { opcode, needs: "1 and 2" })
        }
    }

    /// Updates the flags for an instruction that passed [`Occupancy::check`].
    pub fn apply(&mut self, instr: &Instruction) {
        match *instr {
            Instruction::Init { addr, .. } => self.memory[addr] = true,
            Instruction::Load { addr, cell } => {
                self.memory[addr] = false;
                self.cells[cell.index()] = true;
            }
            Instruction::Save { cell, addr } => {
                self.cells[cell.index()] = false;
                self.memory[addr] = true;
            }
            Instruction::Measure { addr } => self.memory[addr] = false,
            Instruction::Qet { .. } | Instruction::Phase { .. } | Instruction::Cqet { .. } => {}
        }
    }
}

fn finite(name: &'static str, value: f64) -> Result<(), Violation> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Violation::NonFiniteParameter { name })
    }
}

/// Statically simulates occupancy and reports every violated precondition.
///
/// Instructions that fail are skipped for the purpose of later checks.
pub fn validate_program(program: &QuantumProgram) -> Result<(), Vec<Diagnostic>> {
    let mut occupancy = Occupancy::new(program.memory_size);
    let mut diagnostics = Vec::new();
    for (index, instr) in program.instructions.iter().enumerate() {
        match occupancy.check(instr) {
            Ok(()) => occupancy.apply(instr),
            Err(violation) => {
                diagnostics.push(Diagnostic { index, opcode: instr.opcode(), violation })
            }
        }
    }
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(diagnostics)
    }
}
