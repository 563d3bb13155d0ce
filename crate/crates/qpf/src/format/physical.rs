use std::fmt::Write;

use qpu_core::isa::{Cell, Instruction, QuantumProgram};

use super::{err, header, indexed, no_more, real, statements, ParseError};

/// A parsed program plus the source line of each instruction.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedPhysical {
    pub program: QuantumProgram,
    pub lines: Vec<usize>,
}

fn cell(line: usize, token: Option<&&str>) -> Result<Cell, ParseError> {
    let j = indexed(line, token, 'c', "cell")?;
    Cell::new(j).map_or_else(|| err(line, format!("cell c{j} does not exist (c0..c2)")), Ok)
}

fn transistor(line: usize, tokens: &[&str], at: usize) -> Result<u32, ParseError> {
    match tokens.get(at) {
        None => Ok(0),
        Some(_) => {
            let id = indexed(line, tokens.get(at), 't', "transistor")?;
            no_more(line, tokens, at + 1)?;
            u32::try_from(id).or_else(|_| err(line, "transistor id too large"))
        }
    }
}

fn instruction(line: usize, t: &[&str]) -> Result<Instruction, ParseError> {
    let op = t[0].to_ascii_uppercase();
    let ins = match op.as_str() {
        "INIT" => {
            let addr = indexed(line, t.get(1), 'm', "memory address")?;
            let value = match t.get(2).copied() {
                Some("0") => false,
                Some("1") => true,
                Some(other) => return err(line, format!("INIT value must be 0 or 1, found `{other}`")),
                None => return err(line, "missing parameter value"),
            };
            no_more(line, t, 3)?;
            Instruction::Init { addr, value }
        }
        "LOAD" => {
            let addr = indexed(line, t.get(1), 'm', "memory address")?;
            let cell = cell(line, t.get(2))?;
            no_more(line, t, 3)?;
            Instruction::Load { addr, cell }
        }
        "SAVE" => {
            let cell = cell(line, t.get(1))?;
            let addr = indexed(line, t.get(2), 'm', "memory address")?;
            no_more(line, t, 3)?;
            Instruction::Save { cell, addr }
        }
        "QET" => {
            let theta = real(line, t.get(1), "theta")?;
            Instruction::Qet { theta, transistor: transistor(line, t, 2)? }
        }
        "PHASE" => {
            let theta = real(line, t.get(1), "theta")?;
            let phi = real(line, t.get(2), "phi")?;
            Instruction::Phase { theta, phi, transistor: transistor(line, t, 3)? }
        }
        "CQET" => Instruction::Cqet { transistor: transistor(line, t, 1)? },
        "MEASURE" => {
            let addr = indexed(line, t.get(1), 'm', "memory address")?;
            no_more(line, t, 2)?;
            Instruction::Measure { addr }
        }
        _ => return err(line, format!("unknown opcode `{}`", t[0])),
    };
    Ok(ins)
}

/// Parses a `QPU s=<int>` program. All syntax errors are collected.
pub fn parse_physical(src: &str) -> Result<ParsedPhysical, Vec<ParseError>> {
    let mut stmts = statements(src);
    let Some((hline, htokens)) = stmts.next() else {
        return Err(vec![ParseError { line: 1, message: "empty program, expected header `QPU s=<int>`".into() }]);
    };
    let mut errors = Vec::new();
    let memory_size = header(hline, &htokens, "QPU", "s").unwrap_or_else(|e| {
        errors.push(e);
        0
    });
    let mut instructions = Vec::new();
    let mut lines = Vec::new();
    for (line, tokens) in stmts {
        match instruction(line, &tokens) {
            Ok(ins) => {
                instructions.push(ins);
                lines.push(line);
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(ParsedPhysical { program: QuantumProgram::new(memory_size, instructions), lines })
    } else {
        Err(errors)
    }
}

fn suffix(transistor: u32) -> String {
    if transistor == 0 { String::new() } else { format!(" t{transistor}") }
}

pub fn emit_physical(program: &QuantumProgram) -> String {
    let mut out = format!("QPU s={}\n", program.memory_size);
    for ins in &program.instructions {
        let _ = match *ins {
            Instruction::Init { addr, value } => writeln!(out, "INIT m{addr} {}", value as u8),
            Instruction::Load { addr, cell } => writeln!(out, "LOAD m{addr} c{}", cell.index()),
            Instruction::Save { cell, addr } => writeln!(out, "SAVE c{} m{addr}", cell.index()),
            Instruction::Qet { theta, transistor } => writeln!(out, "QET {theta}{}", suffix(transistor)),
            Instruction::Phase { theta, phi, transistor } => {
                writeln!(out, "PHASE {theta} {phi}{}", suffix(transistor))
            }
            Instruction::Cqet { transistor } => writeln!(out, "CQET{}", suffix(transistor)),
            Instruction::Measure { addr } => writeln!(out, "MEASURE m{addr}"),
        };
    }
    out
}
