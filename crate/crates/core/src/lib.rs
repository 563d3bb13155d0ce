//! Emulator core for a three-cell excitation-transfer quantum processor.
//!
//! The crate is `no_std` (it needs `alloc`) and is split into four layers:
//!
//! * [`sim`]: dense state vectors over mixed-dimension composite systems.
//! * [`isa`]: the seven-instruction machine (memory slots, a three-cell
//!   transistor, initialization and measurement) and its gate matrices.
//! * [`protocol`]: a multilevel model of the three-cavity transistor whose
//!   pulse sequence is checked against the controlled-transfer gate.
//! * [`logical`]: the pairwise `|0_L> = |01>`, `|1_L> = |10>` encoding and a
//!   compiler from logical circuits to machine programs.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod isa;
pub mod logical;
pub mod protocol;
pub mod sim;

pub use num_complex::Complex64;
