use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::sim::{Amplitude, RandomSource, StateVector, SubsystemShape, PIPELINE_TOL};

pub const PHOTON_A: usize = 0;
pub const MEM_A: usize = 1;
pub const PHOTON_B: usize = 2;
pub const DOT_B: usize = 3;
pub const PHOTON_C: usize = 4;
pub const MEM_C: usize = 5;

pub const PROTOCOL_DIMENSION: usize = 384;

const DIMS: [usize; 6] = [2, 4, 2, 3, 2, 4];

pub fn protocol_shape() -> SubsystemShape {
    SubsystemShape::new(DIMS).expect("fixed protocol dimensions")
}

/// A basis configuration in ket order. `dot` uses the physical labels 1..=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub photon_a: u8,
    pub mem_a: u8,
    pub photon_b: u8,
    pub dot: u8,
    pub photon_c: u8,
    pub mem_c: u8,
}

impl Config {
    pub const fn new(photon_a: u8, mem_a: u8, photon_b: u8, dot: u8, photon_c: u8, mem_c: u8) -> Self {
        Self { photon_a, mem_a, photon_b, dot, photon_c, mem_c }
    }

    /// Subsystem levels for [`protocol_shape`] (dot label `l` is level `l - 1`).
    pub fn levels(&self) -> [usize; 6] {
        [
            self.photon_a as usize,
            self.mem_a as usize,
            self.photon_b as usize,
            self.dot as usize - 1,
            self.photon_c as usize,
            self.mem_c as usize,
        ]
    }

    pub fn from_levels(levels: &[usize]) -> Self {
        Self::new(
            levels[PHOTON_A] as u8,
            levels[MEM_A] as u8,
            levels[PHOTON_B] as u8,
            levels[DOT_B] as u8 + 1,
            levels[PHOTON_C] as u8,
            levels[MEM_C] as u8,
        )
    }

    pub fn index(&self) -> usize {
        protocol_shape().index_of(&self.levels()).expect("config within protocol space")
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|{}>a|{}>mem_a|{}>b|{}>dot|{}>c|{}>mem_c",
            self.photon_a, self.mem_a, self.photon_b, self.dot, self.photon_c, self.mem_c
        )
    }
}

/// Photons plus atomic excitation markers (memory or dot at level 2 or 3).
///
/// Every cavity exchange, pi-pulse and cavity transfer used by the protocol
/// preserves this count.
pub fn excitation_number(config: &Config) -> u8 {
    config.photon_a
        + config.photon_b
        + config.photon_c
        + (config.mem_a >= 2) as u8
        + (config.mem_c >= 2) as u8
        + (config.dot >= 2) as u8
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("|alpha|^2+|beta|^2+|gamma|^2+|delta|^2 = {0}, expected 1")]
    NotNormalized(f64),
    #[error("non-finite coefficient")]
    NonFinite,
}

/// Amplitudes of the four initial configurations.
///
/// `alpha`: excitation in memory a, dot 1. `beta`: memory c, dot 1.
/// `gamma`: memory a, dot 3. `delta`: memory c, dot 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolInput {
    alpha: Amplitude,
    beta: Amplitude,
    gamma: Amplitude,
    delta: Amplitude,
}

impl ProtocolInput {
    pub fn new(
        alpha: Amplitude,
        beta: Amplitude,
        gamma: Amplitude,
        delta: Amplitude,
    ) -> Result<Self, InputError> {
        let coeffs = [alpha, beta, gamma, delta];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(InputError::NonFinite);
        }
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > PIPELINE_TOL {
            return Err(InputError::NotNormalized(norm));
        }
        Ok(Self { alpha, beta, gamma, delta })
    }

    /// Basis input with amplitude 1 on term `k` (0 = alpha .. 3 = delta).
    pub fn basis(k: usize) -> Self {
        let mut c = [Complex64::ZERO; 4];
        c[k] = Complex64::ONE;
        Self { alpha: c[0], beta: c[1], gamma: c[2], delta: c[3] }
    }

    /// Random normalized coefficients, Gaussian in each real component.
    pub fn random(rng: &mut RandomSource) -> Self {
        let c: [Complex64; 4] = core::array::from_fn(|_| {
            let u1 = 1.0 - rng.uniform();
            let u2 = rng.uniform();
            let r = libm::sqrt(-2.0 * libm::log(u1));
            Complex64::new(r * libm::cos(TAU * u2), r * libm::sin(TAU * u2))
        });
        let n = libm::sqrt(c.iter().map(|z| z.norm_sqr()).sum::<f64>());
        Self { alpha: c[0] / n, beta: c[1] / n, gamma: c[2] / n, delta: c[3] / n }
    }

    pub fn coefficients(&self) -> [Amplitude; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

/// The four initial configurations in the simulation frame, alpha first.
pub(crate) const INITIAL_CONFIGS: [Config; 4] = [
    Config::new(0, 3, 0, 1, 0, 1),
    Config::new(0, 1, 0, 1, 0, 3),
    Config::new(0, 3, 0, 3, 0, 1),
    Config::new(0, 1, 0, 3, 0, 3),
];

#[derive(Debug, Clone, PartialEq, Error)]
#[error("relabeling maps {first} and {second} onto the same configuration")]
pub struct RelabelError {
    pub first: Config,
    pub second: Config,
}

/// A normalized state of the 384-dimensional protocol space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolState(StateVector);

impl ProtocolState {
    pub fn initial(input: &ProtocolInput) -> Self {
        Self::from_terms(INITIAL_CONFIGS.iter().copied().zip(input.coefficients()))
    }

    /// Sums `amplitude * |config>` over the given terms. Input must be normalized.
    pub(crate) fn from_terms(terms: impl IntoIterator<Item = (Config, Amplitude)>) -> Self {
        let mut amps = alloc::vec![Complex64::ZERO; PROTOCOL_DIMENSION];
        for (config, amp) in terms {
            amps[config.index()] += amp;
        }
        Self(StateVector::from_amplitudes(protocol_shape(), amps).expect("normalized terms"))
    }

    pub(crate) fn from_state(state: StateVector) -> Self {
        debug_assert_eq!(state.shape(), &protocol_shape());
        Self(state)
    }

    pub fn state(&self) -> &StateVector {
        &self.0
    }

    pub fn amplitude(&self, config: &Config) -> Amplitude {
        self.0.amplitudes()[config.index()]
    }

    /// Configurations with nonzero amplitude, in index order.
    pub fn support(&self) -> Vec<(Config, Amplitude)> {
        let shape = self.0.shape();
        self.0
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 1e-28)
            .map(|(i, &a)| (Config::from_levels(&shape.levels_of(i)), a))
            .collect()
    }

    /// Applies a per-level relabeling to both memory ensembles.
    ///
    /// `map` need not be injective on all levels, only on the support.
    pub fn relabel_memories(&self, map: impl Fn(u8) -> u8) -> Result<Self, RelabelError> {
        let mut seen: Vec<(Config, Config)> = Vec::new();
        let mut terms = Vec::new();
        for (config, amp) in self.support() {
            let mut mapped = config;
            mapped.mem_a = map(config.mem_a);
            mapped.mem_c = map(config.mem_c);
            if let Some(&(first, _)) = seen.iter().find(|(_, m)| *m == mapped) {
                return Err(RelabelError { first, second: config });
            }
            seen.push((config, mapped));
            terms.push((mapped, amp));
        }
        Ok(Self::from_terms(terms))
    }
}
