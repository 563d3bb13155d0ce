//! Two-level cavity-atom dynamics.
//!
//! The Hamiltonian is `wa a'a + wb b'b - k a'b - k* ab'` in units with
//! hbar = 1, with `c1` the amplitude on `a` and `c2` the amplitude on `b`.

use num_complex::Complex64;
use thiserror::Error;

use crate::sim::Amplitude;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("step count must be positive")]
    ZeroSteps,
    #[error("integration did not converge (step-doubling difference {difference:e})")]
    NotConverged { difference: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityAtomParams {
    pub kappa: Complex64,
    pub omega_a: f64,
    pub omega_b: f64,
    pub t: f64,
}

impl CavityAtomParams {
    fn check(&self) -> Result<(), DynamicsError> {
        let named = [
            ("kappa", self.kappa.is_finite()),
            ("omega_a", self.omega_a.is_finite()),
            ("omega_b", self.omega_b.is_finite()),
            ("t", self.t.is_finite()),
        ];
        match named.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(DynamicsError::NonFinite(name)),
            None => Ok(()),
        }
    }
}

fn expi(x: f64) -> Complex64 {
    Complex64::new(libm::cos(x), libm::sin(x))
}

/// Closed-form amplitudes at time `t` starting from `(alpha, beta)`.
pub fn rabi_coefficients(
    alpha: Amplitude,
    beta: Amplitude,
    p: &CavityAtomParams,
) -> Result<(Amplitude, Amplitude), DynamicsError> {
    p.check()?;
    let delta = p.omega_a - p.omega_b;
    let d = libm::sqrt(delta * delta + 4.0 * p.kappa.norm_sqr());
    let g = expi(-(p.omega_a + p.omega_b) * p.t / 2.0);
    if d == 0.0 {
        return Ok((g * alpha, g * beta));
    }
    let half = d * p.t / 2.0;
    let (s, c) = (libm::sin(half), libm::cos(half));
    let i = Complex64::I;
    let c1 = alpha * c - i * (alpha * delta - 2.0 * beta * p.kappa) / d * s;
    let c2 = beta * c + i * (beta * delta + 2.0 * alpha * p.kappa.conj()) / d * s;
    Ok((g * c1, g * c2))
}

fn rk4(alpha: Amplitude, beta: Amplitude, p: &CavityAtomParams, steps: usize) -> (Amplitude, Amplitude) {
    let i = Complex64::I;
    let f = |c1: Amplitude, c2: Amplitude| {
        (-i * (p.omega_a * c1 - p.kappa * c2), -i * (p.omega_b * c2 - p.kappa.conj() * c1))
    };
    let h = p.t / steps as f64;
    let (mut c1, mut c2) = (alpha, beta);
    for _ in 0..steps {
        let k1 = f(c1, c2);
        let k2 = f(c1 + k1.0 * (h / 2.0), c2 + k1.1 * (h / 2.0));
        let k3 = f(c1 + k2.0 * (h / 2.0), c2 + k2.1 * (h / 2.0));
        let k4 = f(c1 + k3.0 * h, c2 + k3.1 * h);
        c1 += (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0) * (h / 6.0);
        c2 += (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) * (h / 6.0);
    }
    (c1, c2)
}

/// Numerically integrates the same equations with fixed-step RK4.
///
/// The result at `2 * steps` is returned if it agrees with the `steps`
/// result to within `1e-8`.
pub fn integrate_two_level(
    alpha: Amplitude,
    beta: Amplitude,
    p: &CavityAtomParams,
    steps: usize,
) -> Result<(Amplitude, Amplitude), DynamicsError> {
    p.check()?;
    if steps == 0 {
        return Err(DynamicsError::ZeroSteps);
    }
    let coarse = rk4(alpha, beta, p, steps);
    let fine = rk4(alpha, beta, p, steps * 2);
    let difference = (coarse.0 - fine.0).norm().max((coarse.1 - fine.1).norm());
    if !(difference <= 1e-8) {
        return Err(DynamicsError::NotConverged { difference });
    }
    Ok(fine)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeemanParams {
    pub omega_0: f64,
    pub lande_g: f64,
    pub mu: f64,
    pub field: f64,
    pub t: f64,
}

/// Free evolution of a Zeeman-split pair; `a` is shifted up by `g mu B / 2`.
pub fn zeeman_phase(
    c1: Amplitude,
    c2: Amplitude,
    p: &ZeemanParams,
) -> Result<(Amplitude, Amplitude), DynamicsError> {
    let named = [
        ("omega_0", p.omega_0),
        ("lande_g", p.lande_g),
        ("mu", p.mu),
        ("field", p.field),
        ("t", p.t),
    ];
    if let Some((name, _)) = named.iter().find(|(_, v)| !v.is_finite()) {
        return Err(DynamicsError::NonFinite(name));
    }
    let split = p.lande_g * p.mu * p.field / 2.0;
    let wa = p.omega_0 + split;
    let wb = p.omega_0 - split;
    Ok((c1 * expi(-wa * p.t), c2 * expi(-wb * p.t)))
}
