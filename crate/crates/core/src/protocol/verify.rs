use num_complex::Complex64;
use thiserror::Error;

use super::ops::Convention;
use super::sequence::run_protocol;
use super::space::{Config, ProtocolInput, ProtocolState};
use crate::isa::cqet_matrix;
use crate::sim::{Amplitude, RandomSource};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("at least one sample is required")]
    NoSamples,
    #[error("{0} has no logical meaning")]
    Unmapped(Config),
}

/// Reads a protocol state as a three-qubit `|control, t1, t2>` state.
///
/// Dot level 1 is control 0 and level 3 is control 1. An excitation in
/// memory a is `t1 t2 = 10`, one in memory c is `01`.
pub fn logical_frame(state: &ProtocolState) -> Result<[Amplitude; 8], VerifyError> {
    let mut out = [Complex64::ZERO; 8];
    for (config, amp) in state.support() {
        let control = match config.dot {
            1 => 0,
            3 => 1,
            _ => return Err(VerifyError::Unmapped(config)),
        };
        let photons = config.photon_a + config.photon_b + config.photon_c;
        let targets = match (config.mem_a >= 2, config.mem_c >= 2) {
            (true, false) => 0b10,
            (false, true) => 0b01,
            _ => return Err(VerifyError::Unmapped(config)),
        };
        if photons != 0 {
            return Err(VerifyError::Unmapped(config));
        }
        out[control * 4 + targets] += amp;
    }
    Ok(out)
}

/// How closely the pulse sequence realises the CQET gate on the logical subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct CqetReport {
    pub samples: usize,
    /// Worst `1 - |<CQET psi | out>|^2` over random inputs.
    pub max_infidelity: f64,
    /// Worst infidelity after a fixed phase on each control branch.
    pub max_infidelity_control_phase: f64,
    /// `<CQET e_k | out_k>` for the four basis inputs alpha..delta.
    pub branch_phases: [Amplitude; 4],
    /// Phase applied to the control-0 and control-1 branches in the corrected figure.
    pub control_phases: [Amplitude; 2],
}

fn apply8(m: &[Amplitude], v: &[Amplitude; 8]) -> [Amplitude; 8] {
    core::array::from_fn(|r| (0..8).map(|c| m[r * 8 + c] * v[c]).sum())
}

fn overlap(a: &[Amplitude; 8], b: &[Amplitude; 8]) -> Amplitude {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn transport(input: &ProtocolInput, convention: Convention) -> Result<[Amplitude; 8], VerifyError> {
    logical_frame(run_protocol(input, convention).final_state())
}

pub fn verify_against_cqet(
    samples: usize,
    convention: Convention,
    rng: &mut RandomSource,
) -> Result<CqetReport, VerifyError> {
    if samples == 0 {
        return Err(VerifyError::NoSamples);
    }
    let cqet = cqet_matrix();
    let gate = cqet.entries();

    let mut branch_phases = [Complex64::ZERO; 4];
    for (k, phase) in branch_phases.iter_mut().enumerate() {
        let basis = ProtocolInput::basis(k);
        let expected = apply8(gate, &logical_frame(&ProtocolState::initial(&basis))?);
        *phase = overlap(&expected, &transport(&basis, convention)?);
    }
    // alpha and gamma carry control 0 and 1 respectively
    let control_phases = [branch_phases[0], branch_phases[2]];

    let mut max_infidelity: f64 = 0.0;
    let mut max_corrected: f64 = 0.0;
    for _ in 0..samples {
        let input = ProtocolInput::random(rng);
        let out = transport(&input, convention)?;
        let expected = apply8(gate, &logical_frame(&ProtocolState::initial(&input))?);
        let corrected: [Amplitude; 8] = core::array::from_fn(|i| expected[i] * control_phases[i / 4]);
        max_infidelity = max_infidelity.max(1.0 - overlap(&expected, &out).norm_sqr());
        max_corrected = max_corrected.max(1.0 - overlap(&corrected, &out).norm_sqr());
    }

    Ok(CqetReport {
        samples,
        max_infidelity,
        max_infidelity_control_phase: max_corrected,
        branch_phases,
        control_phases,
    })
}
