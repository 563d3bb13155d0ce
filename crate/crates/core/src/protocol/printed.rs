//! The reference kets for every stage of the sequence, as tabulated.
//!
//! The tabulated kets use a frame that moves during the run: in states 1
//! and 2 a memory is excited when it sits at level 3, and from state 3 on
//! when it sits at level 1 or 3. Comparison therefore works on occupation
//! patterns, where each memory is reduced to excited or not.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::space::{Config, ProtocolInput, ProtocolState};
use crate::sim::Amplitude;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Coefficient {
    const ALL: [Coefficient; 4] = [Self::Alpha, Self::Beta, Self::Gamma, Self::Delta];

    fn of(self, input: &ProtocolInput) -> Amplitude {
        input.coefficients()[self as usize]
    }
}

const fn c(pa: u8, ma: u8, pb: u8, d: u8, pc: u8, mc: u8) -> Config {
    Config::new(pa, ma, pb, d, pc, mc)
}

/// Kets for states 1..=12, one per coefficient in alpha..delta order.
const TABLE: [[Config; 4]; 12] = [
    [c(0, 3, 0, 1, 0, 1), c(0, 1, 0, 1, 0, 3), c(0, 3, 0, 3, 0, 1), c(0, 1, 0, 3, 0, 3)],
    [c(1, 1, 0, 1, 0, 1), c(0, 0, 0, 1, 0, 3), c(1, 1, 0, 3, 0, 1), c(0, 1, 0, 3, 0, 3)],
    [c(0, 0, 1, 1, 0, 0), c(0, 0, 0, 1, 0, 1), c(0, 0, 1, 3, 0, 0), c(0, 0, 0, 3, 0, 1)],
    [c(0, 0, 0, 2, 0, 0), c(0, 0, 0, 1, 0, 1), c(0, 0, 1, 3, 0, 0), c(0, 0, 0, 3, 0, 1)],
    [c(0, 0, 0, 3, 0, 0), c(0, 0, 0, 1, 0, 1), c(0, 0, 1, 2, 0, 0), c(0, 0, 0, 2, 0, 1)],
    [c(0, 0, 0, 3, 0, 0), c(0, 0, 0, 1, 0, 1), c(0, 3, 0, 2, 0, 0), c(0, 0, 0, 2, 0, 1)],
    [c(0, 0, 0, 3, 0, 0), c(0, 0, 1, 1, 0, 0), c(0, 3, 0, 2, 0, 0), c(0, 0, 1, 2, 0, 0)],
    [c(0, 0, 0, 2, 0, 0), c(0, 0, 1, 1, 0, 0), c(0, 3, 0, 3, 0, 0), c(0, 0, 1, 3, 0, 0)],
    [c(0, 0, 1, 1, 0, 0), c(0, 0, 0, 2, 0, 0), c(0, 3, 0, 3, 0, 0), c(0, 0, 1, 3, 0, 0)],
    [c(0, 0, 0, 1, 0, 1), c(0, 0, 0, 2, 0, 0), c(0, 3, 0, 3, 0, 0), c(0, 0, 0, 3, 0, 1)],
    [c(0, 0, 0, 1, 0, 1), c(0, 0, 1, 1, 0, 0), c(0, 3, 0, 3, 0, 0), c(0, 0, 0, 3, 0, 1)],
    [c(0, 0, 0, 1, 0, 1), c(0, 1, 0, 1, 0, 0), c(0, 1, 0, 3, 0, 0), c(0, 0, 0, 3, 0, 1)],
];

/// Tabulated terms of state `k` (1..=12) with their coefficient symbols.
pub fn printed_terms(k: usize) -> [(Coefficient, Config); 4] {
    let row = &TABLE[k - 1];
    core::array::from_fn(|i| (Coefficient::ALL[i], row[i]))
}

/// Tabulated state `k` with the given coefficients, kets taken literally.
pub fn printed_state(k: usize, input: &ProtocolInput) -> ProtocolState {
    ProtocolState::from_terms(printed_terms(k).map(|(coef, config)| (config, coef.of(input))))
}

type Pattern = [u8; 6];

fn pattern(config: &Config, excited: impl Fn(u8) -> bool) -> Pattern {
    [
        config.photon_a,
        excited(config.mem_a) as u8,
        config.photon_b,
        config.dot,
        config.photon_c,
        excited(config.mem_c) as u8,
    ]
}

fn printed_excited(k: usize, level: u8) -> bool {
    if k <= 2 {
        level == 3
    } else {
        level == 1 || level == 3
    }
}

fn simulated_excited(level: u8) -> bool {
    level >= 2
}

/// Outcome of comparing a simulated state with the tabulated one.
#[derive(Debug, Clone, PartialEq)]
pub struct StepComparison {
    pub step: usize,
    /// Overlap squared over occupation patterns.
    pub fidelity: f64,
    /// Same patterns and bit-identical amplitudes.
    pub exact: bool,
}

pub fn compare_step(k: usize, simulated: &ProtocolState, input: &ProtocolInput) -> StepComparison {
    let mut sim: Vec<(Pattern, Amplitude)> = Vec::new();
    let mut collided = false;
    for (config, amp) in simulated.support() {
        let p = pattern(&config, simulated_excited);
        match sim.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => {
                entry.1 += amp;
                collided = true;
            }
            None => sim.push((p, amp)),
        }
    }
    let mut printed: Vec<(Pattern, Amplitude)> = Vec::new();
    for (coef, config) in printed_terms(k) {
        let amp = coef.of(input);
        if amp == Complex64::ZERO {
            continue;
        }
        let p = pattern(&config, |l| printed_excited(k, l));
        match printed.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += amp,
            None => printed.push((p, amp)),
        }
    }
    let overlap: Amplitude = printed
        .iter()
        .map(|(p, a)| {
            let s = sim.iter().find(|(q, _)| q == p).map_or(Complex64::ZERO, |e| e.1);
            a.conj() * s
        })
        .sum();
    let exact = !collided
        && sim.len() == printed.len()
        && printed.iter().all(|(p, a)| sim.iter().any(|(q, s)| q == p && s == a));
    StepComparison { step: k, fidelity: overlap.norm_sqr(), exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{run_protocol, Convention};

    #[test]
    fn every_step_matches_the_table_for_basis_inputs() {
        for b in 0..4 {
            let input = ProtocolInput::basis(b);
            let run = run_protocol(&input, Convention::Ideal);
            for k in 1..=12 {
                let cmp = compare_step(k, run.state(k), &input);
                assert!(cmp.exact, "input {b} state {k}");
            }
        }
    }

    #[test]
    fn wrong_state_is_rejected() {
        let input = ProtocolInput::basis(0);
        let run = run_protocol(&input, Convention::Ideal);
        let cmp = compare_step(5, run.state(4), &input);
        assert!(!cmp.exact);
        assert_eq!(cmp.fidelity, 0.0);
    }
}
