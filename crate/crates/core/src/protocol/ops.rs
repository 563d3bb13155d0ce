use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::space::{DOT_B, MEM_A, MEM_C, PHOTON_A, PHOTON_B, PHOTON_C};
use crate::sim::{Amplitude, LocalUnitary};

/// One of the three cavities together with its atomic system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    A,
    B,
    C,
}

impl Site {
    pub fn photon(self) -> usize {
        match self {
            Site::A => PHOTON_A,
            Site::B => PHOTON_B,
            Site::C => PHOTON_C,
        }
    }

    pub fn atom(self) -> usize {
        match self {
            Site::A => MEM_A,
            Site::B => DOT_B,
            Site::C => MEM_C,
        }
    }

    fn levels(self) -> core::ops::RangeInclusive<u8> {
        match self {
            Site::B => 1..=3,
            _ => 0..=3,
        }
    }

    fn level_offset(self) -> u8 {
        *self.levels().start()
    }

    fn atom_dim(self) -> usize {
        self.levels().count()
    }

    fn letter(self) -> char {
        match self {
            Site::A => 'a',
            Site::B => 'b',
            Site::C => 'c',
        }
    }
}

/// Phase attached to each swapped component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Pure permutations.
    #[default]
    Ideal,
    /// Half-period resonant evolution: each transferred component picks up `i`.
    Physical,
}

impl Convention {
    fn factor(self) -> Amplitude {
        match self {
            Convention::Ideal => Complex64::ONE,
            Convention::Physical => Complex64::I,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryOp {
    /// Cavity-atom exchange on the transition between two adjacent levels.
    /// `levels` is `(from, to)` as written; the operator is symmetric.
    R { site: Site, levels: (u8, u8) },
    /// Pi-pulse swapping two atomic levels.
    U { site: Site, levels: (u8, u8) },
    /// Photon transfer between two cavities.
    Q { from: Site, to: Site },
}

impl ElementaryOp {
    pub const fn r(site: Site, from: u8, to: u8) -> Self {
        Self::R { site, levels: (from, to) }
    }

    pub const fn u(site: Site, from: u8, to: u8) -> Self {
        Self::U { site, levels: (from, to) }
    }

    pub const fn q(from: Site, to: Site) -> Self {
        Self::Q { from, to }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::R { site, levels: (i, j) } => write!(f, "R{i}{j}({})", site.letter()),
            Self::U { site, levels: (i, j) } => write!(f, "U{i}{j}({})", site.letter()),
            Self::Q { from, to } => write!(f, "Q{}{}", from.letter(), to.letter()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{op}: {reason}")]
pub struct OpError {
    pub op: ElementaryOp,
    pub reason: &'static str,
}

/// A local unitary together with the subsystems it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteOperator {
    pub unitary: LocalUnitary,
    pub targets: Vec<usize>,
}

/// Builds the unitary for one elementary operation.
///
/// `R` exchanges `|hi, 0>` and `|lo, 1>` on `(atom, photon)` and is defined
/// only on the `{1,2}` and `{2,3}` transitions; the cavity never holds more
/// than one photon.
pub fn elementary_unitary(op: ElementaryOp, convention: Convention) -> Result<SiteOperator, OpError> {
    let err = |reason| Err(OpError { op, reason });
    let phase = convention.factor();
    match op {
        ElementaryOp::R { site, levels: (i, j) } => {
            let (lo, hi) = (i.min(j), i.max(j));
            if i == j {
                return err("levels must differ");
            }
            if !site.levels().contains(&lo) || !site.levels().contains(&hi) {
                return err("level not present at this site");
            }
            if !matches!((lo, hi), (1, 2) | (2, 3)) {
                return err("cavity exchange couples levels {1,2} or {2,3} only");
            }
            let off = site.level_offset() as usize;
            let (lo, hi) = (lo as usize - off, hi as usize - off);
            // row-major over (atom, photon): index = atom * 2 + photon
            let a = hi * 2;
            let b = lo * 2 + 1;
            let unitary = swap_unitary(alloc::vec![site.atom_dim(), 2], a, b, phase);
            Ok(SiteOperator { unitary, targets: alloc::vec![site.atom(), site.photon()] })
        }
        ElementaryOp::U { site, levels: (i, j) } => {
            if i == j {
                return err("levels must differ");
            }
            if !site.levels().contains(&i) || !site.levels().contains(&j) {
                return err("level not present at this site");
            }
            let off = site.level_offset() as usize;
            let unitary =
                swap_unitary(alloc::vec![site.atom_dim()], i as usize - off, j as usize - off, phase);
            Ok(SiteOperator { unitary, targets: alloc::vec![site.atom()] })
        }
        ElementaryOp::Q { from, to } => {
            if from == to {
                return err("transfer needs two distinct cavities");
            }
            // |10> <-> |01> over (from, to)
            let unitary = swap_unitary(alloc::vec![2, 2], 2, 1, phase);
            Ok(SiteOperator { unitary, targets: alloc::vec![from.photon(), to.photon()] })
        }
    }
}

fn swap_unitary(dims: Vec<usize>, a: usize, b: usize, phase: Amplitude) -> LocalUnitary {
    LocalUnitary::from_fn(dims, |r, c| {
        if (r == a && c == b) || (r == b && c == a) {
            phase
        } else if r == c && r != a && r != b {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
    .expect("valid local dimensions")
}
