use thiserror::Error;

use super::dispatch::DispatchResult;
use super::table::AddressTable;
use super::transform::Segment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("measurement of physical address {addr} belongs to no qubit of this request")]
    Orphan { addr: usize },
    #[error("leakage on q{qubit}: pair measured as ({}, {})", .bits.0 as u8, .bits.1 as u8)]
    Leakage { qubit: usize, bits: (bool, bool) },
    #[error("no measurement for q{qubit}")]
    Missing { qubit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClientResults {
    pub client: String,
    pub id: Option<u64>,
    /// `(local address, logical bit)` in MEASURE order.
    pub results: Vec<(usize, bool)>,
}

/// Decodes pair measurements into logical bits on the client's local
/// addresses. `|01>` reads as 0 and `|10>` as 1; anything else is leakage.
pub fn demux_results(
    segment: &Segment,
    result: &DispatchResult,
    table: &AddressTable,
) -> Result<ClientResults, DecodeError> {
    for &(addr, _) in &result.records {
        let owned = table
            .global_of_physical(addr)
            .and_then(|g| table.owner(g))
            .is_some_and(|(client, _)| client == segment.client);
        if !owned {
            return Err(DecodeError::Orphan { addr });
        }
    }
    let bit_of = |addr: usize| result.records.iter().find(|r| r.0 == addr).map(|r| r.1);
    let mut results = Vec::with_capacity(segment.reported.len());
    for &g in &segment.reported {
        let (_, local) = table.owner(g).expect("reported qubits are in the table");
        let (first, second) = table.pair(g).expect("reported qubits are in the table");
        let (Some(a), Some(b)) = (bit_of(first), bit_of(second)) else {
            return Err(DecodeError::Missing { qubit: local });
        };
        if a == b {
            return Err(DecodeError::Leakage { qubit: local, bits: (a, b) });
        }
        results.push((local, a));
    }
    Ok(ClientResults { client: segment.client.clone(), id: segment.id, results })
}
