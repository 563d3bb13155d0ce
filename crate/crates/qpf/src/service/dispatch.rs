use qpu_core::isa::{run_program, ExecError, ExecutionTrace, Instruction, QuantumProgram, RunOutput};
use qpu_core::sim::RandomSource;

use super::batch::ExecutionBatch;
use super::table::AddressTable;
use super::transform::Segment;

/// A QPU controller that runs one physical program at a time.
pub trait Backend {
    /// Maximum number of commands per submission.
    fn capacity(&self) -> usize;
    fn execute(&mut self, program: &QuantumProgram) -> Result<RunOutput, ExecError>;
}

/// The state-vector emulator, with one seeded random stream for all runs.
#[derive(Debug, Clone)]
pub struct EmulatorBackend {
    capacity: usize,
    rng: RandomSource,
}

impl EmulatorBackend {
    pub fn new(capacity: usize, seed: u64) -> Self {
        Self { capacity, rng: RandomSource::new(seed) }
    }
}

impl Backend for EmulatorBackend {
    fn capacity(&self) -> usize {
        self.capacity
    }

    fn execute(&mut self, program: &QuantumProgram) -> Result<RunOutput, ExecError> {
        run_program(program, &mut self.rng)
    }
}

const BASE_FREQUENCY_HZ: f64 = 5.0e9;
const CHANNEL_SPACING_HZ: f64 = 2.0e6;

/// Address parameters of a physical qubit within one segment. Frequency and
/// recording time are synthetic.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalAddress {
    pub index: usize,
    pub global: usize,
    pub frequency: f64,
    pub recording_time: u64,
}

/// Measurement records on global physical addresses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DispatchResult {
    pub records: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentRun {
    pub segment: Segment,
    pub addresses: Vec<PhysicalAddress>,
    /// The program sent to the backend, on slot indices.
    pub program: QuantumProgram,
    pub outcome: Result<(DispatchResult, ExecutionTrace), ExecError>,
}

impl SegmentRun {
    /// Trace record indices at which an occupied slot belongs to a client
    /// other than the segment's owner, or to no client. Empty for failed runs
    /// and for runs that respect isolation.
    pub fn isolation_violations(&self, table: &AddressTable) -> Vec<usize> {
        let Ok((_, trace)) = &self.outcome else { return Vec::new() };
        let foreign = |slot: usize| {
            let owner = self
                .addresses
                .get(slot)
                .and_then(|a| table.global_of_physical(a.global))
                .and_then(|g| table.owner(g));
            owner.is_none_or(|(client, _)| client != self.segment.client)
        };
        trace
            .records
            .iter()
            .filter(|r| r.memory_occupied.iter().enumerate().any(|(slot, &live)| live && foreign(slot)))
            .map(|r| r.index)
            .collect()
    }

    /// True when the trace ends with every slot measured out.
    pub fn drained(&self) -> bool {
        match &self.outcome {
            Ok((_, trace)) => trace.records.last().is_none_or(|r| !r.memory_occupied.iter().any(|&b| b)),
            Err(_) => false,
        }
    }
}

fn addresses(segment: &Segment, clock: u64) -> Vec<PhysicalAddress> {
    let mut out: Vec<PhysicalAddress> = Vec::new();
    for addr in segment.body.iter().filter_map(Instruction::memory_addr) {
        if !out.iter().any(|a| a.global == addr) {
            let index = out.len();
            out.push(PhysicalAddress {
                index,
                global: addr,
                frequency: BASE_FREQUENCY_HZ + index as f64 * CHANNEL_SPACING_HZ,
                recording_time: clock,
            });
        }
    }
    out
}

/// Slot program for a segment, with an INIT placed just before the first
/// instruction that touches each qubit.
fn build_program(segment: &Segment, addrs: &[PhysicalAddress]) -> QuantumProgram {
    let slot = |global: usize| addrs.iter().find(|a| a.global == global).expect("addressed").index;
    let mut resident = vec![false; addrs.len()];
    let mut instructions = Vec::with_capacity(segment.command_count());
    for ins in &segment.body {
        if let Some(global) = ins.memory_addr() {
            let s = slot(global);
            if !resident[s] {
                let value = segment.init_bits.iter().find(|(a, _)| *a == global).is_some_and(|b| b.1);
                instructions.push(Instruction::Init { addr: s, value });
                resident[s] = true;
            }
        }
        instructions.push(ins.map_addr(slot));
    }
    QuantumProgram::new(addrs.len(), instructions)
}

/// Runs each segment of the batch in order. A failing segment only affects
/// its own outcome.
pub fn dispatch(batch: &ExecutionBatch, backend: &mut dyn Backend, clock: &mut u64) -> Vec<SegmentRun> {
    batch
        .segments
        .iter()
        .map(|segment| {
            let addrs = addresses(segment, *clock);
            *clock += 1;
            let program = build_program(segment, &addrs);
            let outcome = backend.execute(&program).map(|out| {
                let records = out.results.iter().map(|&(s, bit)| (addrs[s].global, bit)).collect();
                (DispatchResult { records }, out.trace)
            });
            SegmentRun { segment: segment.clone(), addresses: addrs, program, outcome }
        })
        .collect()
}
