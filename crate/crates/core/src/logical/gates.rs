use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::action::{distance_up_to_phase, logical_action};
use super::encoding::LogicalQubitMap;
use super::{LogicalError, TRANSISTOR};
use crate::isa::{Cell, Instruction};
use crate::sim::Amplitude;

/// QET angle applied to the target pair before the conditional swap.
pub const CNOT_TARGET_PRE_QET: f64 = -PI;
/// Logical Rz angle applied to the control pair afterwards.
pub const CNOT_CONTROL_PHASE: f64 = FRAC_PI_2;

fn check(theta: f64) -> Result<(), LogicalError> {
    if theta.is_finite() { Ok(()) } else { Err(LogicalError::NonFinite) }
}

fn on_pair(pair: (usize, usize), gate: Instruction) -> Vec<Instruction> {
    let (first, second) = pair;
    alloc::vec![
        Instruction::Load { addr: first, cell: Cell::FIRST },
        Instruction::Load { addr: second, cell: Cell::SECOND },
        gate,
        Instruction::Save { cell: Cell::FIRST, addr: first },
        Instruction::Save { cell: Cell::SECOND, addr: second },
    ]
}

/// Logical `Rx(theta)`. QET carries `+i sin`, so the angle is negated.
pub fn logical_rx(map: &LogicalQubitMap, id: usize, theta: f64) -> Result<Vec<Instruction>, LogicalError> {
    check(theta)?;
    Ok(on_pair(map.pair(id)?, Instruction::Qet { theta: -theta, transistor: TRANSISTOR }))
}

pub fn logical_rz(map: &LogicalQubitMap, id: usize, theta: f64) -> Result<Vec<Instruction>, LogicalError> {
    logical_phase(map, id, theta, 0.0)
}

/// `PHASE(theta, phi)` on a pair: `e^{i phi / 2} Rz(theta)` on the logical qubit.
pub fn logical_phase(
    map: &LogicalQubitMap,
    id: usize,
    theta: f64,
    phi: f64,
) -> Result<Vec<Instruction>, LogicalError> {
    check(theta)?;
    check(phi)?;
    Ok(on_pair(map.pair(id)?, Instruction::Phase { theta, phi, transistor: TRANSISTOR }))
}

fn cnot_with(
    map: &LogicalQubitMap,
    control: usize,
    target: usize,
    pre_qet: f64,
    control_phase: f64,
) -> Result<Vec<Instruction>, LogicalError> {
    if control == target {
        return Err(LogicalError::SameOperands);
    }
    let (c_first, c_second) = map.pair(control)?;
    let (t_first, t_second) = map.pair(target)?;
    let t = TRANSISTOR;
    let mut out = alloc::vec![
        Instruction::Load { addr: t_first, cell: Cell::FIRST },
        Instruction::Load { addr: t_second, cell: Cell::SECOND },
        Instruction::Qet { theta: pre_qet, transistor: t },
        Instruction::Load { addr: c_first, cell: Cell::CONTROL },
        Instruction::Cqet { transistor: t },
        Instruction::Save { cell: Cell::CONTROL, addr: c_first },
        Instruction::Save { cell: Cell::FIRST, addr: t_first },
        Instruction::Save { cell: Cell::SECOND, addr: t_second },
    ];
    out.extend(on_pair(
        (c_first, c_second),
        Instruction::Phase { theta: control_phase, phi: 0.0, transistor: t },
    ));
    Ok(out)
}

/// Logical CNOT (control `|1_L>` flips the target) up to a global phase.
///
/// The conditional swap fires when the control's first qubit is `|0>`,
/// i.e. on `|0_L>`, and applies `iX`. A QET on the target beforehand moves
/// the flip onto the `|1_L>` branch and a PHASE on the control pair makes the
/// branch phases equal.
pub fn synthesize_logical_cnot(
    map: &LogicalQubitMap,
    control: usize,
    target: usize,
) -> Result<Vec<Instruction>, LogicalError> {
    cnot_with(map, control, target, CNOT_TARGET_PRE_QET, CNOT_CONTROL_PHASE)
}

fn cnot_reference() -> Vec<Amplitude> {
    let mut m = alloc::vec![Amplitude::ZERO; 16];
    for (col, row) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[row * 4 + col] = Amplitude::ONE;
    }
    m
}

/// Searches multiples of pi/4 in `[-2pi, 2pi]` for the two correction angles,
/// ordered by `|pre| + |phase|`, then `pre`, then `phase`.
pub fn solve_cnot_constants() -> Option<(f64, f64)> {
    let map = LogicalQubitMap::sequential(2);
    let grid: Vec<f64> = (-8..=8).map(|k| k as f64 * FRAC_PI_4).collect();
    let mut candidates: Vec<(f64, f64)> =
        grid.iter().flat_map(|&a| grid.iter().map(move |&p| (a, p))).collect();
    candidates.sort_by(|x, y| {
        (x.0.abs() + x.1.abs(), x.0, x.1).partial_cmp(&(y.0.abs() + y.1.abs(), y.0, y.1)).expect("finite")
    });
    let reference = cnot_reference();
    candidates.into_iter().find(|&(pre, phase)| {
        let seq = cnot_with(&map, 0, 1, pre, phase).expect("valid map");
        let action = logical_action(&seq, &map, &[0, 1]).expect("valid sequence");
        distance_up_to_phase(&action, &reference) < 1e-9
    })
}
