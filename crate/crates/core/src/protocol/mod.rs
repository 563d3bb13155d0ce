//! Multilevel model of the three-cavity quantum transistor.
//!
//! The system is `photon_a, mem_a, photon_b, dot_b, photon_c, mem_c`
//! (384 states). Memory ensembles have levels 0..=3 and the gate dot has
//! levels 1..=3. In the simulation frame a memory ensemble is in its ground
//! state at level 1 and holds an excitation at level 3; level 2 is the
//! transient readout level.
//!
//! The pulse sequence is built from cavity-atom exchanges (`R`), atomic
//! pi-pulses (`U`) and cavity-cavity transfers (`Q`). Its net action is a
//! conditional excitation swap between the two memories, which is checked
//! against [`crate::isa::cqet_matrix`] by [`verify_against_cqet`].

mod dynamics;
mod ops;
mod printed;
mod sequence;
mod space;
mod verify;

pub use dynamics::{
    integrate_two_level, rabi_coefficients, zeeman_phase, CavityAtomParams, DynamicsError,
    ZeemanParams,
};
pub use ops::{elementary_unitary, Convention, ElementaryOp, OpError, Site, SiteOperator};
pub use printed::{compare_step, printed_state, printed_terms, Coefficient, StepComparison};
pub use sequence::{protocol_sequence, run_protocol, ProtocolRun, ProtocolStep};
pub use space::{
    excitation_number, protocol_shape, Config, InputError, ProtocolInput, ProtocolState,
    RelabelError, DOT_B, MEM_A, MEM_C, PHOTON_A, PHOTON_B, PHOTON_C, PROTOCOL_DIMENSION,
};
pub use verify::{logical_frame, verify_against_cqet, CqetReport, VerifyError};
