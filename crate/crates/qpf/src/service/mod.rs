//! The programming framework: a service that analyses, transforms and
//! buffers client requests, and a dispatcher that addresses, executes and
//! decodes them on a QPU backend.
//!
//! Each accepted request becomes one [`Segment`]: the client's whole
//! physical instruction run, ending in a MEASURE of every qubit it touched.
//! Segments run one at a time on a fresh register, so physical slot indices
//! are reused freely between them and no two clients ever share live qubits.

mod analysis;
mod batch;
mod demux;
mod dispatch;
mod framework;
mod server;
mod table;
mod transform;
mod wire;

use thiserror::Error;

pub use analysis::{analyze, Diagnostic, LogicalOp, ValidatedRequest};
pub use batch::{buffer_and_batch, ExecutionBatch};
pub use demux::{demux_results, ClientResults, DecodeError};
pub use dispatch::{dispatch, Backend, DispatchResult, EmulatorBackend, PhysicalAddress, SegmentRun};
pub use framework::{BatchReport, Framework, SegmentReport, DEFAULT_WIDTH_LIMIT};
pub use server::{handle_connection, serve_stdio, serve_tcp, ServerConfig, Shared};
pub use table::AddressTable;
pub use transform::{transform, Segment};
pub use wire::{ClientRequest, ErrorEntry, OpDescriptor, QubitResult, Request, Response};

/// Default number of commands the emulator accepts per submission.
pub const DEFAULT_CAPACITY: usize = 1024;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ServiceError {
    #[error("physical address space exhausted ({needed} more addresses needed, limit {limit})")]
    Exhausted { needed: usize, limit: usize },
    #[error("request needs {commands} commands but the backend accepts {capacity}")]
    TooLarge { commands: usize, capacity: usize },
    #[error("compilation failed: {0}")]
    Compile(#[from] qpu_core::logical::LogicalError),
}
