use alloc::vec::Vec;
use core::fmt;

/// One of the three transistor cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(u8);

impl Cell {
    pub const CONTROL: Cell = Cell(0);
    pub const FIRST: Cell = Cell(1);
    pub const SECOND: Cell = Cell(2);

    pub fn new(index: usize) -> Option<Self> {
        (index < 3).then_some(Cell(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Opcode {
    Init,
    Load,
    Save,
    Qet,
    Phase,
    Cqet,
    Measure,
}

impl Opcode {
    pub fn mnemonic(self) -> &'static str {
        match self {
            Opcode::Init => "INIT",
            Opcode::Load => "LOAD",
            Opcode::Save => "SAVE",
            Opcode::Qet => "QET",
            Opcode::Phase => "PHASE",
            Opcode::Cqet => "CQET",
            Opcode::Measure => "MEASURE",
        }
    }
}

impl fmt::Display for Opcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// A QPU instruction. Each variant carries only the operands its opcode uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Instruction {
    /// Emit a qubit in `|value>` into a free memory slot.
    Init { addr: usize, value: bool },
    /// Move a stored qubit into a free transistor cell.
    Load { addr: usize, cell: Cell },
    /// Move a transistor cell back into a free memory slot.
    Save { cell: Cell, addr: usize },
    Qet { theta: f64, transistor: u32 },
    Phase { theta: f64, phi: f64, transistor: u32 },
    Cqet { transistor: u32 },
    /// Measure a memory slot and free it.
    Measure { addr: usize },
}

impl Instruction {
    pub fn opcode(&self) -> Opcode {
        match self {
            Instruction::Init { .. } => Opcode::Init,
            Instruction::Load { .. } => Opcode::Load,
            Instruction::Save { .. } => Opcode::Save,
            Instruction::Qet { .. } => Opcode::Qet,
            Instruction::Phase { .. } => Opcode::Phase,
            Instruction::Cqet { .. } => Opcode::Cqet,
            Instruction::Measure { .. } => Opcode::Measure,
        }
    }

    pub fn memory_addr(&self) -> Option<usize> {
        match *self {
            Instruction::Init { addr, .. }
            | Instruction::Load { addr, .. }
            | Instruction::Save { addr, .. }
            | Instruction::Measure { addr } => Some(addr),
            _ => None,
        }
    }

    pub fn transistor(&self) -> Option<u32> {
        match *self {
            Instruction::Qet { transistor, .. }
            | Instruction::Phase { transistor, .. }
            | Instruction::Cqet { transistor } => Some(transistor),
            _ => None,
        }
    }

    /// Same instruction with its memory address rewritten by `f`.
    pub fn map_addr(self, f: impl FnOnce(usize) -> usize) -> Self {
        match self {
            Instruction::Init { addr, value } => Instruction::Init { addr: f(addr), value },
            Instruction::Load { addr, cell } => Instruction::Load { addr: f(addr), cell },
            Instruction::Save { cell, addr } => Instruction::Save { cell, addr: f(addr) },
            Instruction::Measure { addr } => Instruction::Measure { addr: f(addr) },
            other => other,
        }
    }
}

/// A `(t, s)` program: `t` instructions over `s` memory qubits.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuantumProgram {
    pub memory_size: usize,
    pub instructions: Vec<Instruction>,
}

impl QuantumProgram {
    pub fn new(memory_size: usize, instructions: Vec<Instruction>) -> Self {
        Self { memory_size, instructions }
    }

    /// Time complexity: instruction count.
    pub fn time(&self) -> usize {
        self.instructions.len()
    }

    /// Space complexity: memory qubits.
    pub fn space(&self) -> usize {
        self.memory_size
    }
}
