//! Implementations of the `qpf` subcommands. Each returns the process exit
//! code and writes to the given sink.

use std::io::Write;

use anyhow::Result;
use serde_json::json;

use qpu_core::isa::{run_program, validate_program, QuantumProgram};
use qpu_core::logical::{transform_program, LogicalProgram, LogicalQubitMap};
use qpu_core::protocol::{compare_step, run_protocol, verify_against_cqet, Convention, ProtocolInput};
use qpu_core::sim::RandomSource;

use crate::format::{detect_kind, emit_physical, parse_logical, parse_physical, ParseError, ProgramKind};

/// Strict CQET infidelity above which `protocol-verify` fails.
pub const PROTOCOL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputMode {
    #[default]
    Human,
    Machine,
}

struct Out<'a> {
    sink: &'a mut dyn Write,
    mode: OutputMode,
}

impl Out<'_> {
    fn emit(&mut self, human: impl FnOnce() -> String, machine: impl FnOnce() -> serde_json::Value) -> Result<()> {
        match self.mode {
            OutputMode::Human => writeln!(self.sink, "{}", human())?,
            OutputMode::Machine => writeln!(self.sink, "{}", machine())?,
        }
        Ok(())
    }

    fn diagnostic(&mut self, line: Option<usize>, message: &str) -> Result<()> {
        self.emit(
            || match line {
                Some(l) => format!("line {l}: {message}"),
                None => message.to_string(),
            },
            || json!({"type": "diagnostic", "line": line, "message": message}),
        )
    }

    fn parse_errors(&mut self, errors: &[ParseError]) -> Result<i32> {
        for e in errors {
            self.diagnostic(Some(e.line), &e.message)?;
        }
        Ok(1)
    }
}

enum Loaded {
    Physical { program: QuantumProgram, lines: Vec<usize> },
    Logical { program: LogicalProgram },
}

fn load(src: &str, out: &mut Out) -> Result<Result<Loaded, i32>> {
    match detect_kind(src) {
        Some(ProgramKind::Physical) => match parse_physical(src) {
            Ok(p) => Ok(Ok(Loaded::Physical { program: p.program, lines: p.lines })),
            Err(errs) => Ok(Err(out.parse_errors(&errs)?)),
        },
        Some(ProgramKind::Logical) => match parse_logical(src) {
            Ok(p) => Ok(Ok(Loaded::Logical { program: p.program })),
            Err(errs) => Ok(Err(out.parse_errors(&errs)?)),
        },
        None => {
            out.diagnostic(Some(1), "expected header `QPU s=<int>` or `LQ n=<int>`")?;
            Ok(Err(1))
        }
    }
}

fn check_physical(program: &QuantumProgram, lines: &[usize], out: &mut Out) -> Result<bool> {
    match validate_program(program) {
        Ok(()) => Ok(true),
        Err(diags) => {
            for d in diags {
                let msg = format!("instruction {} ({}): {}", d.index, d.opcode, d.violation);
                out.diagnostic(lines.get(d.index).copied(), &msg)?;
            }
            Ok(false)
        }
    }
}

fn compile(program: &LogicalProgram) -> Result<QuantumProgram> {
    Ok(transform_program(program, &LogicalQubitMap::sequential(program.qubits))?)
}

pub fn cmd_validate(src: &str, mode: OutputMode, sink: &mut dyn Write) -> Result<i32> {
    let mut out = Out { sink, mode };
    let ok = match load(src, &mut out)? {
        Err(code) => return Ok(code),
        Ok(Loaded::Physical { program, lines }) => {
            let ok = check_physical(&program, &lines, &mut out)?;
            if ok {
                out.emit(
                    || format!("ok: {} instructions, s={}", program.time(), program.memory_size),
                    || json!({"type": "validate", "ok": true, "instructions": program.time()}),
                )?;
            }
            ok
        }
        Ok(Loaded::Logical { program }) => {
            let physical = compile(&program)?;
            let ok = check_physical(&physical, &[], &mut out)?;
            if ok {
                out.emit(
                    || format!("ok: {} logical qubits, {} gates", program.qubits, program.gates.len()),
                    || json!({"type": "validate", "ok": true, "gates": program.gates.len()}),
                )?;
            }
            ok
        }
    };
    Ok(if ok { 0 } else { 1 })
}

pub fn cmd_compile(src: &str, sink: &mut dyn Write, errors: &mut dyn Write) -> Result<i32> {
    let mut out = Out { sink: errors, mode: OutputMode::Human };
    match load(src, &mut out)? {
        Err(code) => Ok(code),
        Ok(Loaded::Physical { .. }) => {
            out.diagnostic(Some(1), "compile expects a logical program (`LQ n=<int>`)")?;
            Ok(1)
        }
        Ok(Loaded::Logical { program }) => {
            write!(sink, "{}", emit_physical(&compile(&program)?))?;
            Ok(0)
        }
    }
}

/// One measured position and its count of ones.
struct Tally {
    key: usize,
    ones: usize,
}

pub fn cmd_run(src: &str, seed: u64, shots: usize, mode: OutputMode, sink: &mut dyn Write) -> Result<i32> {
    let mut out = Out { sink, mode };
    let (program, logical) = match load(src, &mut out)? {
        Err(code) => return Ok(code),
        Ok(Loaded::Physical { program, lines }) => {
            if !check_physical(&program, &lines, &mut out)? {
                return Ok(1);
            }
            (program, None)
        }
        Ok(Loaded::Logical { program }) => (compile(&program)?, Some(program)),
    };
    let key_name = if logical.is_some() { "qubit" } else { "addr" };
    let prefix = if logical.is_some() { "q" } else { "m" };
    let mut rng = RandomSource::new(seed);
    let mut tallies: Vec<Tally> = Vec::new();
    for shot in 0..shots {
        let run = match run_program(&program, &mut rng) {
            Ok(r) => r,
            Err(e) => {
                out.diagnostic(None, &format!("shot {shot}: instruction {} ({}): {}", e.index, e.opcode, e.failure))?;
                return Ok(1);
            }
        };
        let mut results: Vec<(usize, bool)> = Vec::new();
        match &logical {
            None => results = run.results.clone(),
            Some(lp) => {
                let map = LogicalQubitMap::sequential(lp.qubits);
                for &q in &lp.measured {
                    let (first, second) = map.pair(q)?;
                    let bit = |a| run.results.iter().find(|r| r.0 == a).map(|r| r.1);
                    match (bit(first), bit(second)) {
                        (Some(a), Some(b)) if a != b => results.push((q, a)),
                        _ => {
                            out.diagnostic(None, &format!("shot {shot}: leakage on q{q}"))?;
                            return Ok(1);
                        }
                    }
                }
            }
        }
        for &(key, bit) in &results {
            match tallies.iter_mut().find(|t| t.key == key) {
                Some(t) => t.ones += bit as usize,
                None => tallies.push(Tally { key, ones: bit as usize }),
            }
        }
        out.emit(
            || {
                let cells: Vec<String> = results.iter().map(|(k, b)| format!("{prefix}{k}={}", *b as u8)).collect();
                format!("shot {shot}: {}", cells.join(" "))
            },
            || {
                let recs: Vec<_> = results.iter().map(|(k, b)| json!({key_name: k, "bit": *b as u8})).collect();
                json!({"type": "shot", "shot": shot, "results": recs})
            },
        )?;
    }
    let freq = |t: &Tally| t.ones as f64 / shots as f64;
    out.emit(
        || {
            let mut s = format!("{shots} shots");
            for t in &tallies {
                s.push_str(&format!("\n{prefix}{}: P(0)={:.4} P(1)={:.4}", t.key, 1.0 - freq(t), freq(t)));
            }
            s
        },
        || {
            let f: Vec<_> = tallies
                .iter()
                .map(|t| json!({key_name: t.key, "zero": 1.0 - freq(t), "one": freq(t)}))
                .collect();
            json!({"type": "summary", "shots": shots, "frequencies": f})
        },
    )?;
    Ok(0)
}

pub fn cmd_protocol_verify(
    samples: usize,
    convention: Convention,
    seed: u64,
    mode: OutputMode,
    sink: &mut dyn Write,
) -> Result<i32> {
    let mut out = Out { sink, mode };
    if samples == 0 {
        out.diagnostic(None, "samples must be at least 1")?;
        return Ok(2);
    }
    let mut rng = RandomSource::new(seed);
    let mut min_fid = [1.0f64; 12];
    let mut exact = [0usize; 12];
    for _ in 0..samples {
        let input = ProtocolInput::random(&mut rng);
        let run = run_protocol(&input, convention);
        for k in 1..=12 {
            let c = compare_step(k, run.state(k), &input);
            min_fid[k - 1] = min_fid[k - 1].min(c.fidelity);
            exact[k - 1] += c.exact as usize;
        }
    }
    for k in 1..=12 {
        out.emit(
            || format!("state {k:>2}: min fidelity {:.12}  exact {}/{samples}", min_fid[k - 1], exact[k - 1]),
            || json!({"type": "step", "state": k, "min_fidelity": min_fid[k - 1], "exact": exact[k - 1], "samples": samples}),
        )?;
    }
    let report = verify_against_cqet(samples, convention, &mut rng)?;
    let phase = |z: qpu_core::Complex64| (z.re, z.im);
    let names = ["alpha", "beta", "gamma", "delta"];
    for (name, z) in names.iter().zip(report.branch_phases) {
        out.emit(
            || format!("branch {name}: <CQET psi|out> = {:+.6}{:+.6}i", z.re, z.im),
            || json!({"type": "branch", "term": name, "phase": phase(z)}),
        )?;
    }
    out.emit(
        || {
            format!(
                "CQET max infidelity (global phase): {:.3e}\nCQET max infidelity (per-control phase): {:.3e}",
                report.max_infidelity, report.max_infidelity_control_phase
            )
        },
        || {
            json!({
                "type": "cqet",
                "convention": format!("{convention:?}").to_lowercase(),
                "samples": samples,
                "max_infidelity": report.max_infidelity,
                "max_infidelity_control_phase": report.max_infidelity_control_phase,
                "control_phases": [phase(report.control_phases[0]), phase(report.control_phases[1])],
            })
        },
    )?;
    let failed = convention == Convention::Ideal && report.max_infidelity > PROTOCOL_TOL;
    Ok(failed as i32)
}
