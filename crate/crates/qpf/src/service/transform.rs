use qpu_core::isa::Instruction;
use qpu_core::logical::{encode_init, logical_phase, logical_rx, synthesize_logical_cnot};

use super::analysis::{LogicalOp, ValidatedRequest};
use super::table::AddressTable;
use super::ServiceError;

/// One client's physical run, on global physical addresses.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub ticket: u64,
    pub client: String,
    pub id: Option<u64>,
    /// Encoded-basis bit for each physical qubit the run uses.
    pub init_bits: Vec<(usize, bool)>,
    /// Gates and measurements. INITs are added at dispatch.
    pub body: Vec<Instruction>,
    /// Global logical addresses whose results go back to the client, in order.
    pub reported: Vec<usize>,
}

impl Segment {
    /// Commands sent to the backend, including the INITs dispatch will add.
    pub fn command_count(&self) -> usize {
        self.init_bits.len() + self.body.len()
    }
}

/// Assigns global addresses and rewrites the request into physical
/// instructions. Qubits that are touched but not measured by the client are
/// measured at the end anyway so the segment leaves nothing live.
pub fn transform(req: &ValidatedRequest, table: &mut AddressTable, ticket: u64) -> Result<Segment, ServiceError> {
    let touched = req.touched();
    let globals = table.resolve_all(&req.client, &touched)?;
    let global = |local: usize| globals[touched.iter().position(|&l| l == local).expect("touched")];
    let map = table.logical_map(&globals);

    let mut init_bits = Vec::new();
    for &g in &globals {
        for ins in encode_init(&map, g, false)? {
            if let Instruction::Init { addr, value } = ins {
                init_bits.push((addr, value));
            }
        }
    }

    let mut body = Vec::new();
    let mut reported = Vec::new();
    let measure = |body: &mut Vec<Instruction>, g: usize| {
        let (first, second) = table.pair(g).expect("resolved");
        body.push(Instruction::Measure { addr: first });
        body.push(Instruction::Measure { addr: second });
    };
    for op in &req.ops {
        match *op {
            LogicalOp::Qet { qubit, theta } => body.extend(logical_rx(&map, global(qubit), theta)?),
            LogicalOp::Phase { qubit, theta, phi } => body.extend(logical_phase(&map, global(qubit), theta, phi)?),
            LogicalOp::Cqet { control, target } => {
                body.extend(synthesize_logical_cnot(&map, global(control), global(target))?)
            }
            LogicalOp::Measure { qubit } => {
                measure(&mut body, global(qubit));
                reported.push(global(qubit));
            }
        }
    }
    for &g in &globals {
        if !reported.contains(&g) {
            measure(&mut body, g);
        }
    }
    Ok(Segment { ticket, client: req.client.clone(), id: req.id, init_bits, body, reported })
}
