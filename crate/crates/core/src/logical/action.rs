use alloc::vec::Vec;

use num_complex::Complex64;

use super::encoding::{encode_init, LogicalQubitMap};
use super::LogicalError;
use crate::isa::{Instruction, MachineState};
use crate::sim::{Amplitude, RandomSource, StateVector};

/// Probability mass allowed outside the encoded subspace.
pub const LEAKAGE_TOL: f64 = 1e-9;

fn register_index(memory_size: usize, bits: &[(usize, bool)]) -> usize {
    // memory slot k is register qubit k; three cells follow
    let total = memory_size + 3;
    bits.iter().filter(|(_, b)| *b).map(|(addr, _)| 1usize << (total - 1 - addr)).sum()
}

fn encoded_bits(map: &LogicalQubitMap, qubits: &[usize], basis: usize) -> Result<Vec<(usize, bool)>, LogicalError> {
    let n = qubits.len();
    let mut bits = Vec::with_capacity(2 * n);
    for (k, &q) in qubits.iter().enumerate() {
        let bit = (basis >> (n - 1 - k)) & 1 == 1;
        let (first, second) = map.pair(q)?;
        bits.push((first, bit));
        bits.push((second, !bit));
    }
    Ok(bits)
}

/// Matrix (row-major, `2^n x 2^n`) of a unitary instruction sequence on the
/// logical basis of `qubits`, first listed qubit most significant.
///
/// Each column is obtained by preparing an encoded basis state on a fresh
/// machine and reading the amplitudes on the encoded basis afterwards.
pub fn logical_action(
    instructions: &[Instruction],
    map: &LogicalQubitMap,
    qubits: &[usize],
) -> Result<Vec<Amplitude>, LogicalError> {
    let dim = 1usize << qubits.len();
    let s = map.memory_size();
    let mut rng = RandomSource::new(0);
    let mut out = alloc::vec![Complex64::ZERO; dim * dim];
    for col in 0..dim {
        let mut machine = MachineState::new(s);
        let mut prep = Vec::new();
        for (k, &q) in qubits.iter().enumerate() {
            let bit = (col >> (qubits.len() - 1 - k)) & 1 == 1;
            prep.extend(encode_init(map, q, bit)?);
        }
        for (i, instr) in prep.iter().chain(instructions).enumerate() {
            machine.execute(i, instr, &mut rng)?;
        }
        let amps = machine.register().amplitudes();
        for row in 0..dim {
            let idx = register_index(s, &encoded_bits(map, qubits, row)?);
            out[row * dim + col] = amps[idx];
        }
    }
    Ok(out)
}

/// Largest entrywise distance between `a` and `e^{i phi} b` for the phase
/// that best aligns them.
pub fn distance_up_to_phase(a: &[Amplitude], b: &[Amplitude]) -> f64 {
    let t: Complex64 = b.iter().zip(a).map(|(x, y)| x.conj() * y).sum();
    let g = if t.norm() > 0.0 { t / t.norm() } else { Complex64::ONE };
    a.iter().zip(b).map(|(x, y)| (x - g * y).norm()).fold(0.0, f64::max)
}

/// True if at most [`LEAKAGE_TOL`] of the probability lies outside the span
/// of `|01>`/`|10>` on every assigned pair. `state` must be a qubit register.
pub fn leakage_check(state: &StateVector, map: &LogicalQubitMap) -> bool {
    let shape = state.shape();
    let n = shape.len();
    let mut leaked = 0.0;
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let bit = |addr: usize| addr < n && (i >> (n - 1 - addr)) & 1 == 1;
        let ok = map.iter().all(|(_, (a, b))| bit(a) != bit(b));
        if !ok {
            leaked += amp.norm_sqr();
        }
    }
    leaked <= LEAKAGE_TOL
}
