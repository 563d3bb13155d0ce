use alloc::vec::Vec;

use super::ops::{elementary_unitary, Convention, ElementaryOp, Site};
use super::space::{ProtocolInput, ProtocolState};

/// One composite step of the pulse sequence, producing state `produces`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolStep {
    pub produces: usize,
    /// Factors in the order they act on the state.
    pub factors: Vec<ElementaryOp>,
}

/// The eleven steps taking the initial state (state 1) to state 12.
pub fn protocol_sequence() -> Vec<ProtocolStep> {
    use ElementaryOp as E;
    use Site::{A, B, C};
    let steps: [&[ElementaryOp]; 11] = [
        &[E::u(A, 2, 3), E::r(A, 1, 2)],
        &[E::q(A, B)],
        &[E::r(B, 2, 1)],
        &[E::u(B, 2, 3)],
        &[E::q(B, A), E::r(A, 2, 1), E::u(A, 3, 2)],
        &[E::u(C, 2, 3), E::r(C, 1, 2), E::q(C, B)],
        &[E::u(B, 2, 3)],
        &[E::r(B, 2, 1)],
        &[E::q(C, B), E::r(C, 2, 1), E::u(C, 3, 2)],
        &[E::r(B, 2, 1)],
        &[E::q(A, B), E::r(A, 2, 1), E::u(A, 3, 2)],
    ];
    steps
        .iter()
        .enumerate()
        .map(|(k, factors)| ProtocolStep { produces: k + 2, factors: factors.to_vec() })
        .collect()
}

/// All twelve states of one protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    states: Vec<ProtocolState>,
}

impl ProtocolRun {
    /// State `k` for `k` in `1..=12`.
    pub fn state(&self, k: usize) -> &ProtocolState {
        &self.states[k - 1]
    }

    pub fn states(&self) -> &[ProtocolState] {
        &self.states
    }

    pub fn final_state(&self) -> &ProtocolState {
        self.states.last().expect("run has states")
    }

    /// States 2 through 11.
    pub fn intermediates(&self) -> &[ProtocolState] {
        &self.states[1..self.states.len() - 1]
    }
}

pub fn run_protocol(input: &ProtocolInput, convention: Convention) -> ProtocolRun {
    let mut states = Vec::with_capacity(12);
    let mut current = ProtocolState::initial(input);
    states.push(current.clone());
    for step in protocol_sequence() {
        let mut psi = current.state().clone();
        for op in step.factors {
            let site_op = elementary_unitary(op, convention).expect("sequence ops are well formed");
            psi = psi
                .apply_local(&site_op.unitary, &site_op.targets)
                .expect("sequence ops act on the protocol space");
        }
        current = ProtocolState::from_state(psi);
        states.push(current.clone());
    }
    ProtocolRun { states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::space::{excitation_number, Config};

    #[test]
    fn eleven_steps_produce_states_two_to_twelve() {
        let seq = protocol_sequence();
        assert_eq!(seq.len(), 11);
        assert_eq!(seq[0].produces, 2);
        assert_eq!(seq[10].produces, 12);
    }

    #[test]
    fn basis_inputs_follow_expected_paths() {
        let finals = [
            Config::new(0, 1, 0, 1, 0, 3),
            Config::new(0, 3, 0, 1, 0, 1),
            Config::new(0, 2, 0, 3, 0, 1),
            Config::new(0, 1, 0, 3, 0, 3),
        ];
        for (k, want) in finals.iter().enumerate() {
            let run = run_protocol(&ProtocolInput::basis(k), Convention::Ideal);
            let support = run.final_state().support();
            assert_eq!(support.len(), 1, "input {k}");
            assert_eq!(support[0].0, *want, "input {k}");
            assert_eq!(support[0].1, num_complex::Complex64::ONE);
        }
    }

    #[test]
    fn excitation_number_is_conserved() {
        for k in 0..4 {
            let run = run_protocol(&ProtocolInput::basis(k), Convention::Physical);
            let n0 = excitation_number(&run.state(1).support()[0].0);
            for state in run.states() {
                for (config, _) in state.support() {
                    assert_eq!(excitation_number(&config), n0, "{config}");
                }
            }
        }
    }
}
