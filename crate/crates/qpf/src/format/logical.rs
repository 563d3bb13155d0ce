use std::fmt::Write;

use qpu_core::logical::{decompose_su2, LogicalGate, LogicalProgram};
use qpu_core::Complex64;

use super::{err, header, indexed, no_more, real, statements, ParseError};

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedLogical {
    pub program: LogicalProgram,
    /// Source line of each gate.
    pub gate_lines: Vec<usize>,
}

fn qubit(line: usize, token: Option<&&str>, n: usize) -> Result<usize, ParseError> {
    let q = indexed(line, token, 'q', "logical qubit")?;
    if q >= n {
        return err(line, format!("qubit q{q} out of range for n={n}"));
    }
    Ok(q)
}

fn gate(line: usize, t: &[&str], n: usize) -> Result<LogicalGate, ParseError> {
    let g = match t[0].to_ascii_uppercase().as_str() {
        "RX" | "RZ" => {
            let theta = real(line, t.get(1), "theta")?;
            let q = qubit(line, t.get(2), n)?;
            no_more(line, t, 3)?;
            if t[0].eq_ignore_ascii_case("RX") {
                LogicalGate::Rx { qubit: q, theta }
            } else {
                LogicalGate::Rz { qubit: q, theta }
            }
        }
        "CNOT" => {
            let control = qubit(line, t.get(1), n)?;
            let target = qubit(line, t.get(2), n)?;
            no_more(line, t, 3)?;
            if control == target {
                return err(line, "CNOT control and target must differ");
            }
            LogicalGate::Cnot { control, target }
        }
        "SU2" => {
            let q = qubit(line, t.get(1), n)?;
            let mut v = [0.0; 8];
            for (k, slot) in v.iter_mut().enumerate() {
                *slot = real(line, t.get(2 + k), "matrix entry")?;
            }
            no_more(line, t, 10)?;
            let c = |k: usize| Complex64::new(v[2 * k], v[2 * k + 1]);
            let matrix = [[c(0), c(1)], [c(2), c(3)]];
            if decompose_su2(&matrix).is_err() {
                return err(line, "SU2 matrix is not unitary");
            }
            LogicalGate::Su2 { qubit: q, matrix }
        }
        _ => return err(line, format!("unknown opcode `{}`", t[0])),
    };
    Ok(g)
}

/// Parses an `LQ n=<int>` program. MEASURE lines must come last.
pub fn parse_logical(src: &str) -> Result<ParsedLogical, Vec<ParseError>> {
    let mut stmts = statements(src);
    let Some((hline, htokens)) = stmts.next() else {
        return Err(vec![ParseError { line: 1, message: "empty program, expected header `LQ n=<int>`".into() }]);
    };
    let mut errors = Vec::new();
    let n = header(hline, &htokens, "LQ", "n").unwrap_or_else(|e| {
        errors.push(e);
        0
    });
    let mut program = LogicalProgram { qubits: n, ..Default::default() };
    let mut gate_lines = Vec::new();
    for (line, t) in stmts {
        if t[0].eq_ignore_ascii_case("MEASURE") {
            match qubit(line, t.get(1), n).and_then(|q| no_more(line, &t, 2).map(|_| q)) {
                Ok(q) if program.measured.contains(&q) => {
                    errors.push(ParseError { line, message: format!("q{q} measured twice") })
                }
                Ok(q) => program.measured.push(q),
                Err(e) => errors.push(e),
            }
            continue;
        }
        if !program.measured.is_empty() {
            errors.push(ParseError { line, message: "gate after MEASURE; measurements must be terminal".into() });
            continue;
        }
        match gate(line, &t, n) {
            Ok(g) => {
                program.gates.push(g);
                gate_lines.push(line);
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(ParsedLogical { program, gate_lines })
    } else {
        Err(errors)
    }
}

pub fn emit_logical(program: &LogicalProgram) -> String {
    let mut out = format!("LQ n={}\n", program.qubits);
    for g in &program.gates {
        let _ = match *g {
            LogicalGate::Rx { qubit, theta } => writeln!(out, "RX {theta} q{qubit}"),
            LogicalGate::Rz { qubit, theta } => writeln!(out, "RZ {theta} q{qubit}"),
            LogicalGate::Cnot { control, target } => writeln!(out, "CNOT q{control} q{target}"),
            LogicalGate::Su2 { qubit, matrix } => {
                let entries: Vec<String> =
                    matrix.iter().flatten().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
                writeln!(out, "SU2 q{qubit} {}", entries.join(" "))
            }
        };
    }
    for q in &program.measured {
        let _ = writeln!(out, "MEASURE q{q}");
    }
    out
}
