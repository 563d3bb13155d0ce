#![allow(dead_code)]

use std::f64::consts::PI;

use qpf::service::{Backend, ClientRequest, EmulatorBackend, Framework, OpDescriptor, Response, DEFAULT_CAPACITY};
use qpu_core::isa::{ExecError, ExecFailure, Instruction, Opcode, QuantumProgram, RunOutput, Violation};

/// Angle that marks a request as poisoned for [`PoisonBackend`].
pub const POISON: f64 = 1.25;

/// Emulator that refuses any program containing `PHASE(POISON, ..)`.
pub struct PoisonBackend(pub EmulatorBackend);

impl Backend for PoisonBackend {
    fn capacity(&self) -> usize {
        self.0.capacity()
    }

    fn execute(&mut self, program: &QuantumProgram) -> Result<RunOutput, ExecError> {
        let poisoned = program
            .instructions
            .iter()
            .position(|i| matches!(i, Instruction::Phase { theta, .. } if *theta == POISON));
        match poisoned {
            Some(index) => Err(ExecError {
                index,
                opcode: Opcode::Phase,
                failure: ExecFailure::Precondition(Violation::UnknownTransistor { id: 99 }),
            }),
            None => self.0.execute(program),
        }
    }
}

pub fn poison_framework(seed: u64) -> Framework<PoisonBackend> {
    Framework::new(PoisonBackend(EmulatorBackend::new(DEFAULT_CAPACITY, seed)))
}

pub fn request(client: &str, id: u64, ops: Vec<OpDescriptor>) -> ClientRequest {
    ClientRequest { client: client.into(), id: Some(id), ops, width: None }
}

pub fn flip(q: usize) -> OpDescriptor {
    OpDescriptor::new("QET", &[q]).with_theta(PI)
}

pub fn measure(q: usize) -> OpDescriptor {
    OpDescriptor::new("MEASURE", &[q])
}

/// Deterministic request: flips the listed qubits, then measures all of `qubits`.
pub fn flips(client: &str, id: u64, qubits: &[usize], flipped: &[usize]) -> ClientRequest {
    let mut ops: Vec<_> = flipped.iter().map(|&q| flip(q)).collect();
    ops.extend(qubits.iter().map(|&q| measure(q)));
    request(client, id, ops)
}

/// Bell pair on local qubits `a`, `b`.
pub fn bell(client: &str, id: u64, a: usize, b: usize) -> ClientRequest {
    request(
        client,
        id,
        vec![
            OpDescriptor::new("QET", &[a]).with_theta(PI / 2.0),
            OpDescriptor::new("CQET", &[a, b]),
            measure(a),
            measure(b),
        ],
    )
}

pub fn results(resp: &Response) -> Vec<(usize, u8)> {
    match resp {
        Response::Result { results, .. } => results.iter().map(|r| (r.qubit, r.bit)).collect(),
        other => panic!("expected result, got {other:?}"),
    }
}

/// Three clients with overlapping local addresses, submitted round-robin.
/// Client `c` poisons its second request.
pub fn interleaved_requests() -> Vec<ClientRequest> {
    let mut out = Vec::new();
    for round in 0..4u64 {
        out.push(flips("a", round, &[0, 1], &[round as usize % 2]));
        out.push(bell("b", round, 0, 1));
        if round == 1 {
            out.push(request(
                "c",
                round,
                vec![OpDescriptor::new("PHASE", &[0]).with_theta(POISON).with_phi(0.0), measure(0)],
            ));
        } else {
            out.push(flips("c", round, &[0, 1, 2], &[0, 2]));
        }
    }
    out
}

/// Submits every request, drains the framework, and returns the response
/// lines in dispatch order.
pub fn transcript<B: Backend>(fw: &mut Framework<B>, reqs: &[ClientRequest]) -> String {
    let mut out = String::new();
    for r in reqs {
        if let Err(resp) = fw.submit(r) {
            out.push_str(&resp.to_line());
            out.push('\n');
        }
    }
    for batch in fw.run_until_idle() {
        for seg in batch.segments {
            out.push_str(&seg.response.to_line());
            out.push('\n');
        }
    }
    out
}
