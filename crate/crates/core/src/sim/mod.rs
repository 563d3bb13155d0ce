//! Dense linear algebra for composite discrete quantum systems.
//!
//! States are stored row-major over [`SubsystemShape::dims`]: the first
//! listed subsystem is the most significant digit of the basis index.

mod error;
mod rng;
mod shape;
mod state;
mod unitary;

pub use error::SimError;
pub use rng::RandomSource;
pub use shape::SubsystemShape;
pub use state::{fidelity, StateVector};
pub use unitary::LocalUnitary;

/// Complex probability amplitude.
pub type Amplitude = num_complex::Complex64;

/// Tolerance for exact algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for quantities accumulated over a pipeline of operations.
pub const PIPELINE_TOL: f64 = 1e-9;
