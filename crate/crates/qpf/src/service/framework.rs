use std::collections::VecDeque;

use log::{debug, info};
use qpu_core::isa::ExecutionTrace;

use super::analysis::{analyze, Diagnostic};
use super::batch::buffer_and_batch;
use super::demux::demux_results;
use super::dispatch::{dispatch, Backend, SegmentRun};
use super::table::AddressTable;
use super::transform::{transform, Segment};
use super::wire::{ClientRequest, ErrorEntry, QubitResult, Response};
use super::ServiceError;

/// Largest local address width a client may declare.
pub const DEFAULT_WIDTH_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentReport {
    pub run: SegmentRun,
    pub response: Response,
}

impl SegmentReport {
    pub fn ticket(&self) -> u64 {
        self.run.segment.ticket
    }

    pub fn trace(&self) -> Option<&ExecutionTrace> {
        self.run.outcome.as_ref().ok().map(|(_, trace)| trace)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub sequence: u64,
    pub commands: usize,
    pub segments: Vec<SegmentReport>,
}

/// Service and dispatcher over one backend. Requests are served FIFO.
pub struct Framework<B: Backend> {
    backend: B,
    table: AddressTable,
    queue: VecDeque<Segment>,
    width_limit: usize,
    next_ticket: u64,
    batches: u64,
    clock: u64,
}

impl<B: Backend> Framework<B> {
    pub fn new(backend: B) -> Self {
        Self::with_table(backend, AddressTable::default())
    }

    pub fn with_table(backend: B, table: AddressTable) -> Self {
        Self {
            backend,
            table,
            queue: VecDeque::new(),
            width_limit: DEFAULT_WIDTH_LIMIT,
            next_ticket: 0,
            batches: 0,
            clock: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.backend.capacity()
    }

    pub fn table(&self) -> &AddressTable {
        &self.table
    }

    pub fn backend_mut(&mut self) -> &mut B {
        &mut self.backend
    }

    pub fn pending(&self) -> usize {
        self.queue.len()
    }

    /// Analyses, transforms and enqueues a request. Returns the ticket that
    /// will label its report, and any analysis notes.
    pub fn submit(&mut self, req: &ClientRequest) -> Result<(u64, Vec<Diagnostic>), Response> {
        let fail = |errors: Vec<ErrorEntry>| Response::Error { client: Some(req.client.clone()), id: req.id, errors };
        let validated = analyze(req, self.width_limit, &self.table).map_err(fail)?;
        let ticket = self.next_ticket;
        let segment = transform(&validated, &mut self.table, ticket)
            .map_err(|e| fail(vec![ErrorEntry { index: None, message: e.to_string() }]))?;
        let capacity = self.capacity();
        if segment.command_count() > capacity {
            let e = ServiceError::TooLarge { commands: segment.command_count(), capacity };
            return Err(fail(vec![ErrorEntry { index: None, message: e.to_string() }]));
        }
        self.next_ticket += 1;
        debug!("ticket {ticket}: client {} queued {} commands", req.client, segment.command_count());
        self.queue.push_back(segment);
        Ok((ticket, validated.notes))
    }

    /// Dispatches one batch, if anything is queued.
    pub fn step(&mut self) -> Option<BatchReport> {
        let batch = buffer_and_batch(&mut self.queue, self.backend.capacity());
        if batch.is_empty() {
            return None;
        }
        let sequence = self.batches;
        self.batches += 1;
        let commands = batch.command_count();
        info!("batch {sequence}: {} segment(s), {commands} commands", batch.segments.len());
        let runs = dispatch(&batch, &mut self.backend, &mut self.clock);
        let segments = runs
            .into_iter()
            .map(|run| {
                let response = self.respond(&run);
                info!(
                    "batch {sequence} segment ticket {}: client {} slots {} -> {}",
                    run.segment.ticket,
                    run.segment.client,
                    run.addresses.len(),
                    if matches!(response, Response::Result { .. }) { "ok" } else { "error" }
                );
                SegmentReport { run, response }
            })
            .collect();
        Some(BatchReport { sequence, commands, segments })
    }

    pub fn run_until_idle(&mut self) -> Vec<BatchReport> {
        std::iter::from_fn(|| self.step()).collect()
    }

    fn respond(&self, run: &SegmentRun) -> Response {
        let seg = &run.segment;
        let err = |message: String, index: Option<usize>| Response::Error {
            client: Some(seg.client.clone()),
            id: seg.id,
            errors: vec![ErrorEntry { index, message }],
        };
        match &run.outcome {
            Err(e) => err(format!("execution failed at instruction {} ({}): {}", e.index, e.opcode, e.failure), None),
            Ok((result, _)) => match demux_results(seg, result, &self.table) {
                Ok(r) => Response::Result {
                    client: r.client,
                    id: r.id,
                    results: r.results.into_iter().map(|(qubit, bit)| QubitResult { qubit, bit: bit as u8 }).collect(),
                },
                Err(e) => err(e.to_string(), None),
            },
        }
    }
}
