#![allow(dead_code)]

use qpu_core::logical::Mat2;
use qpu_core::sim::RandomSource;
use qpu_core::Complex64;

pub fn gaussian(rng: &mut RandomSource) -> f64 {
    let u1 = 1.0 - rng.uniform();
    let u2 = rng.uniform();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn complex_gaussian(rng: &mut RandomSource) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Haar-ish random 2x2 unitary by Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(rng: &mut RandomSource) -> Mat2 {
    let c0 = [complex_gaussian(rng), complex_gaussian(rng)];
    let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    let c0 = [c0[0] / n0, c0[1] / n0];
    let v = [complex_gaussian(rng), complex_gaussian(rng)];
    let p = c0[0].conj() * v[0] + c0[1].conj() * v[1];
    let c1 = [v[0] - p * c0[0], v[1] - p * c0[1]];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    let c1 = [c1[0] / n1, c1[1] / n1];
    [[c0[0], c1[0]], [c0[1], c1[1]]]
}

pub fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
