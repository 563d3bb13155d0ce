//! Program formats, the multi-client programming framework and its
//! dispatcher, built on [`qpu_core`].

pub mod cli;
pub mod format;
pub mod service;
