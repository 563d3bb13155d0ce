use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Amplitude, LocalUnitary, RandomSource, SimError, SubsystemShape, PIPELINE_TOL};

/// Normalized amplitude vector over a composite system.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    shape: SubsystemShape,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// The product basis state with the given per-subsystem levels.
    pub fn basis_state(shape: SubsystemShape, levels: &[usize]) -> Result<Self, SimError> {
        let index = shape.index_of(levels)?;
        let mut amps = alloc::vec![Complex64::ZERO; shape.dimension()];
        amps[index] = Complex64::ONE;
        Ok(Self { shape, amps })
    }

    /// Wraps an amplitude array, checking length, finiteness and normalization.
    pub fn from_amplitudes(shape: SubsystemShape, amps: Vec<Amplitude>) -> Result<Self, SimError> {
        if amps.len() != shape.dimension() {
            return Err(SimError::LengthMismatch { expected: shape.dimension(), got: amps.len() });
        }
        if let Some(index) = amps.iter().position(|a| !a.is_finite()) {
            return Err(SimError::NonFinite { index });
        }
        let state = Self { shape, amps };
        state.check_normalized()?;
        Ok(state)
    }

    pub fn shape(&self) -> &SubsystemShape {
        &self.shape
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, levels: &[usize]) -> Result<Amplitude, SimError> {
        Ok(self.amps[self.shape.index_of(levels)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Amplitude, SimError> {
        if self.shape != other.shape {
            return Err(SimError::ShapeMismatch);
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    fn check_normalized(&self) -> Result<(), SimError> {
        let norm_sqr = self.norm_sqr();
        if !((norm_sqr - 1.0).abs() <= PIPELINE_TOL) {
            return Err(SimError::NotNormalized { norm_sqr });
        }
        Ok(())
    }

    fn check_targets(&self, u: &LocalUnitary, targets: &[usize]) -> Result<(), SimError> {
        if targets.len() != u.arity() {
            return Err(SimError::ArityMismatch { expected: u.arity(), got: targets.len() });
        }
        let dims = self.shape.dims();
        for (k, &target) in targets.iter().enumerate() {
            if target >= dims.len() {
                return Err(SimError::TargetOutOfRange { target, count: dims.len() });
            }
            if targets[..k].contains(&target) {
                return Err(SimError::DuplicateTarget(target));
            }
            if dims[target] != u.dims()[k] {
                return Err(SimError::DimensionMismatch {
                    target,
                    expected: u.dims()[k],
                    got: dims[target],
                });
            }
        }
        Ok(())
    }

    /// Applies `u` to the listed subsystems (identity elsewhere).
    ///
    /// `targets[k]` receives the `k`-th tensor factor of `u`. The result must
    /// stay normalized, so a non-unitary `u` is reported rather than applied.
    pub fn apply_local(&self, u: &LocalUnitary, targets: &[usize]) -> Result<Self, SimError> {
        self.check_targets(u, targets)?;
        let strides = self.shape.strides();
        let local = u.size();

        // offsets[j] is the global index shift of local basis state j
        let mut offsets = alloc::vec![0usize; local];
        for (j, offset) in offsets.iter_mut().enumerate() {
            let mut rem = j;
            for k in (0..targets.len()).rev() {
                let d = u.dims()[k];
                *offset += (rem % d) * strides[targets[k]];
                rem /= d;
            }
        }

        let mut out = alloc::vec![Complex64::ZERO; self.amps.len()];
        let mut gathered = alloc::vec![Complex64::ZERO; local];
        let dims = self.shape.dims();
        let target_axes: Vec<(usize, usize)> = targets.iter().map(|&t| (strides[t], dims[t])).collect();
        for base in 0..self.amps.len() {
            if target_axes.iter().any(|&(s, d)| (base / s) % d != 0) {
                continue;
            }
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base + off];
            }
            for (r, off) in offsets.iter().enumerate() {
                let row = &u.entries()[r * local..(r + 1) * local];
                let mut acc = Complex64::ZERO;
                for (m, a) in row.iter().zip(&gathered) {
                    if *m != Complex64::ZERO {
                        acc += m * a;
                    }
                }
                out[base + off] = acc;
            }
        }
        let state = Self { shape: self.shape.clone(), amps: out };
        state.check_normalized()?;
        Ok(state)
    }

    /// Outcome distribution of a projective measurement of `target`.
    pub fn probabilities(&self, target: usize) -> Result<Vec<f64>, SimError> {
        let dims = self.shape.dims();
        if target >= dims.len() {
            return Err(SimError::TargetOutOfRange { target, count: dims.len() });
        }
        let mut probs = alloc::vec![0.0; dims[target]];
        for (index, a) in self.amps.iter().enumerate() {
            probs[self.shape.level_at(index, target)] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Born-rule measurement of one subsystem, returning the outcome and the
    /// renormalized post-measurement state.
    pub fn measure_subsystem(
        &self,
        target: usize,
        rng: &mut RandomSource,
    ) -> Result<(usize, Self), SimError> {
        let probs = self.probabilities(target)?;
        let total: f64 = probs.iter().sum();
        if !(total >= PIPELINE_TOL) {
            return Err(SimError::DegenerateState { norm_sqr: total });
        }
        let draw = rng.uniform() * total;
        let mut acc = 0.0;
        let mut outcome = None;
        for (k, &p) in probs.iter().enumerate() {
            acc += p;
            if p > 0.0 && draw < acc {
                outcome = Some(k);
                break;
            }
        }
        // rounding can leave `draw` just above the final partial sum
        let outcome =
            outcome.unwrap_or_else(|| probs.iter().rposition(|&p| p > 0.0).unwrap_or(0));
        let scale = 1.0 / libm::sqrt(probs[outcome]);
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(index, a)| {
                if self.shape.level_at(index, target) == outcome {
                    a * scale
                } else {
                    Complex64::ZERO
                }
            })
            .collect();
        Ok((outcome, Self { shape: self.shape.clone(), amps }))
    }
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, SimError> {
    Ok(a.inner(b)?.norm_sqr())
}
