use super::table::AddressTable;
use super::wire::{ClientRequest, ErrorEntry};

/// A checked logical operation on client-local addresses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogicalOp {
    Qet { qubit: usize, theta: f64 },
    Phase { qubit: usize, theta: f64, phi: f64 },
    Cqet { control: usize, target: usize },
    Measure { qubit: usize },
}

impl LogicalOp {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Self::Qet { qubit, .. } | Self::Phase { qubit, .. } | Self::Measure { qubit } => vec![qubit],
            Self::Cqet { control, target } => vec![control, target],
        }
    }
}

pub type Diagnostic = ErrorEntry;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedRequest {
    pub client: String,
    pub id: Option<u64>,
    pub ops: Vec<LogicalOp>,
    /// Non-fatal remarks, e.g. a CQET operand that starts in `|0_L>`.
    pub notes: Vec<Diagnostic>,
}

impl ValidatedRequest {
    /// Local addresses in order of first use.
    pub fn touched(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for q in self.ops.iter().flat_map(LogicalOp::qubits) {
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    pub fn measured(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                LogicalOp::Measure { qubit } => Some(*qubit),
                _ => None,
            })
            .collect()
    }
}

fn diag(index: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic { index: Some(index), message: message.into() }
}

/// Checks a request's data set, parameters and addresses.
///
/// Addresses must be below the request's declared `width`, or below
/// `width_limit` when none is declared.
pub fn analyze(
    req: &ClientRequest,
    width_limit: usize,
    table: &AddressTable,
) -> Result<ValidatedRequest, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let mut notes = Vec::new();
    if req.client.is_empty() {
        errors.push(Diagnostic { index: None, message: "missing client id".into() });
    }
    let width = match req.width {
        Some(w) if w > width_limit => {
            errors.push(Diagnostic {
                index: None,
                message: format!("declared width {w} exceeds the service limit {width_limit}"),
            });
            width_limit
        }
        Some(w) => w,
        None => width_limit,
    };
    if req.ops.is_empty() {
        errors.push(Diagnostic { index: None, message: "empty operation list".into() });
    }

    let mut ops = Vec::new();
    let mut seen = Vec::new();
    let mut measuring = false;
    for (i, d) in req.ops.iter().enumerate() {
        let name = d.op.to_ascii_uppercase();
        let (arity, needs_theta, allows_phi) = match name.as_str() {
            "QET" => (1, true, false),
            "PHASE" => (1, true, true),
            "CQET" => (2, false, false),
            "MEASURE" => (1, false, false),
            _ => {
                errors.push(diag(i, format!("unknown operation `{}`", d.op)));
                continue;
            }
        };
        let before = errors.len();
        if d.qubits.len() != arity {
            errors.push(diag(i, format!("{name} takes {arity} qubit address(es), got {}", d.qubits.len())));
        }
        if needs_theta && d.theta.is_none() {
            errors.push(diag(i, format!("missing parameter theta for {name}")));
        }
        if !needs_theta && d.theta.is_some() {
            errors.push(diag(i, format!("unexpected parameter theta for {name}")));
        }
        if !allows_phi && d.phi.is_some() {
            errors.push(diag(i, format!("unexpected parameter phi for {name}")));
        }
        if [d.theta, d.phi].iter().flatten().any(|v| !v.is_finite()) {
            errors.push(diag(i, "non-finite parameter"));
        }
        for &q in &d.qubits {
            if q >= width {
                errors.push(diag(i, format!("address q{q} out of range for width {width}")));
            }
        }
        if name == "CQET" && d.qubits.len() == 2 && d.qubits[0] == d.qubits[1] {
            errors.push(diag(i, "CQET control and target must differ"));
        }
        if measuring && name != "MEASURE" {
            errors.push(diag(i, format!("{name} after MEASURE; measurements must be terminal")));
        }
        if errors.len() > before {
            continue;
        }
        let op = match name.as_str() {
            "QET" => LogicalOp::Qet { qubit: d.qubits[0], theta: d.theta.unwrap_or_default() },
            "PHASE" => LogicalOp::Phase {
                qubit: d.qubits[0],
                theta: d.theta.unwrap_or_default(),
                phi: d.phi.unwrap_or(0.0),
            },
            "CQET" => {
                for &q in &d.qubits {
                    if !seen.contains(&q) && table.global_of(&req.client, q).is_none() {
                        notes.push(diag(i, format!("q{q} is first used by CQET and starts in |0_L>")));
                    }
                }
                LogicalOp::Cqet { control: d.qubits[0], target: d.qubits[1] }
            }
            _ => {
                let q = d.qubits[0];
                if ops.contains(&LogicalOp::Measure { qubit: q }) {
                    errors.push(diag(i, format!("q{q} measured twice")));
                    continue;
                }
                measuring = true;
                LogicalOp::Measure { qubit: q }
            }
        };
        seen.extend(op.qubits());
        ops.push(op);
    }
    if !req.ops.is_empty() && !req.ops.iter().any(|d| d.op.eq_ignore_ascii_case("MEASURE")) {
        errors.push(Diagnostic { index: None, message: "request has no MEASURE; results could not be returned".into() });
    }
    if errors.is_empty() {
        Ok(ValidatedRequest { client: req.client.clone(), id: req.id, ops, notes })
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::service::wire::OpDescriptor;

    fn request(ops: Vec<OpDescriptor>) -> ClientRequest {
        ClientRequest { client: "alice".into(), id: None, ops, width: Some(4) }
    }

    #[test]
    fn qet_without_theta_is_reported() {
        let req = request(vec![OpDescriptor::new("QET", &[0]), OpDescriptor::new("MEASURE", &[0])]);
        let errs = analyze(&req, 16, &AddressTable::default()).unwrap_err();
        assert_eq!(errs[0].index, Some(0));
        assert!(errs[0].message.contains("missing parameter"));
    }

    #[test]
    fn well_formed_request_passes() {
        let req = request(vec![
            OpDescriptor::new("QET", &[0]).with_theta(1.0),
            OpDescriptor::new("PHASE", &[1]).with_theta(0.5).with_phi(0.1),
            OpDescriptor::new("CQET", &[0, 1]),
            OpDescriptor::new("MEASURE", &[0]),
            OpDescriptor::new("MEASURE", &[1]),
        ]);
        let v = analyze(&req, 16, &AddressTable::default()).unwrap();
        assert_eq!(v.ops.len(), 5);
        assert!(v.notes.is_empty());
        assert_eq!(v.measured(), [0, 1]);
    }

    #[test]
    fn fresh_cqet_operand_is_noted_and_range_checked() {
        let req = request(vec![OpDescriptor::new("CQET", &[0, 2]), OpDescriptor::new("MEASURE", &[2])]);
        let v = analyze(&req, 16, &AddressTable::default()).unwrap();
        assert_eq!(v.notes.len(), 2);
        let bad = request(vec![OpDescriptor::new("CQET", &[0, 4]), OpDescriptor::new("MEASURE", &[0])]);
        let errs = analyze(&bad, 16, &AddressTable::default()).unwrap_err();
        assert!(errs[0].message.contains("out of range"));
    }

    #[test]
    fn structural_errors() {
        let table = AddressTable::default();
        let no_measure = request(vec![OpDescriptor::new("QET", &[0]).with_theta(1.0)]);
        assert!(analyze(&no_measure, 16, &table).is_err());
        let after = request(vec![OpDescriptor::new("MEASURE", &[0]), OpDescriptor::new("QET", &[1]).with_theta(1.0)]);
        assert!(analyze(&after, 16, &table).is_err());
        let twice = request(vec![OpDescriptor::new("MEASURE", &[0]), OpDescriptor::new("MEASURE", &[0])]);
        assert!(analyze(&twice, 16, &table).is_err());
        let extra = request(vec![OpDescriptor::new("MEASURE", &[0]).with_theta(1.0)]);
        assert!(analyze(&extra, 16, &table).is_err());
        let unknown = request(vec![OpDescriptor::new("SWAP", &[0, 1]), OpDescriptor::new("MEASURE", &[0])]);
        assert!(analyze(&unknown, 16, &table).is_err());
        assert!(analyze(&request(vec![]), 16, &table).is_err());
    }
}
