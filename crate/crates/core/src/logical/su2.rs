use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::LogicalError;
use crate::sim::ALGEBRAIC_TOL;

pub type Mat2 = [[Complex64; 2]; 2];

fn expi(x: f64) -> Complex64 {
    Complex64::new(libm::cos(x), libm::sin(x))
}

pub fn rx(theta: f64) -> Mat2 {
    let c = Complex64::new(libm::cos(theta / 2.0), 0.0);
    let s = Complex64::new(0.0, -libm::sin(theta / 2.0));
    [[c, s], [s, c]]
}

pub fn rz(theta: f64) -> Mat2 {
    [[expi(-theta / 2.0), Complex64::ZERO], [Complex64::ZERO, expi(theta / 2.0)]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    core::array::from_fn(|r| core::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c]))
}

fn is_unitary(u: &Mat2) -> bool {
    (0..2).all(|r| {
        (0..2).all(|c| {
            let dot = u[0][r].conj() * u[0][c] + u[1][r].conj() * u[1][c];
            let want = if r == c { 1.0 } else { 0.0 };
            (dot - want).norm() <= ALGEBRAIC_TOL
        })
    })
}

/// `U = e^{i phase} Rz(a) Rx(b) Rz(c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Decomposition {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phase: f64,
}

impl Su2Decomposition {
    pub fn matrix(&self) -> Mat2 {
        let m = mat_mul(&rz(self.a), &mat_mul(&rx(self.b), &rz(self.c)));
        let g = expi(self.phase);
        m.map(|row| row.map(|z| g * z))
    }
}

/// Reduces into `[0, 2pi)`, snapping values within `1e-12` of `2pi` to 0.
fn wrap(x: f64) -> f64 {
    let y = x - TAU * libm::floor(x / TAU);
    if TAU - y < 1e-12 || y < 1e-12 {
        0.0
    } else {
        y
    }
}

fn best_phase(u: &Mat2, m: &Mat2) -> f64 {
    // argmax over phi of Re(e^{-i phi} tr(M^dag U)) with U ~ e^{i phi} M
    let t: Complex64 = (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| m[r][c].conj() * u[r][c]).sum();
    let p = libm::atan2(t.im, t.re);
    if p <= -PI { p + TAU } else { p }
}

/// Z-X-Z Euler decomposition.
///
/// `b` lies in `[0, 2pi)` and `a`, `c` in `[0, 2pi)`. Of the two equivalent
/// forms related by `Rz(pi) Rx(b) Rz(pi) = Rx(2pi - b)`, the one with the
/// smaller `a + c` is returned, then the smaller `b`.
pub fn decompose_su2(u: &Mat2) -> Result<Su2Decomposition, LogicalError> {
    if u.iter().flatten().any(|z| !z.is_finite()) {
        return Err(LogicalError::NonFinite);
    }
    if !is_unitary(u) {
        return Err(LogicalError::NotUnitary);
    }
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let s = det.sqrt();
    let v00 = u[0][0] / s;
    let v10 = u[1][0] / s;

    let b = 2.0 * libm::atan2(v10.norm(), v00.norm());
    let sigma = if v00.norm() > 1e-14 { -libm::atan2(v00.im, v00.re) } else { 0.0 };
    let iv10 = Complex64::I * v10;
    let lambda = if v10.norm() > 1e-14 { libm::atan2(iv10.im, iv10.re) } else { 0.0 };

    let mut candidates = [
        (wrap(sigma + lambda), wrap(b), wrap(sigma - lambda)),
        (wrap(sigma + lambda + PI), wrap(TAU - b), wrap(sigma - lambda + PI)),
    ];
    for cand in &mut candidates {
        // at b = 0 only a + c is determined
        if cand.1 == 0.0 {
            *cand = (wrap(cand.0 + cand.2), 0.0, 0.0);
        }
    }
    let (a, b, c) = candidates
        .iter()
        .copied()
        .min_by(|x, y| (x.0 + x.2, x.1).partial_cmp(&(y.0 + y.2, y.1)).expect("finite"))
        .expect("two candidates");
    let bare = Su2Decomposition { a, b, c, phase: 0.0 }.matrix();
    Ok(Su2Decomposition { a, b, c, phase: best_phase(u, &bare) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(x: &Mat2, y: &Mat2) -> f64 {
        x.iter().flatten().zip(y.iter().flatten()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_is_all_zero() {
        let id = rz(0.0);
        let d = decompose_su2(&id).unwrap();
        assert_eq!((d.a, d.b, d.c), (0.0, 0.0, 0.0));
        assert!(d.phase.abs() < 1e-15);
    }

    #[test]
    fn rx_is_already_canonical() {
        for theta in [0.3, 1.0, PI - 0.01, PI + 0.2, 5.5] {
            let d = decompose_su2(&rx(theta)).unwrap();
            assert_eq!((d.a, d.c), (0.0, 0.0), "theta {theta}");
            assert!((d.b - theta).abs() < 1e-12, "theta {theta}: {}", d.b);
            assert!(dist(&d.matrix(), &rx(theta)) < 1e-12);
        }
    }

    #[test]
    fn minus_identity_is_a_phase() {
        let m = [[-Complex64::ONE, Complex64::ZERO], [Complex64::ZERO, -Complex64::ONE]];
        let d = decompose_su2(&m).unwrap();
        assert_eq!((d.a, d.b, d.c), (0.0, 0.0, 0.0));
        assert!((d.phase - PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = [[Complex64::ONE, Complex64::ONE], [Complex64::ZERO, Complex64::ONE]];
        assert_eq!(decompose_su2(&m), Err(LogicalError::NotUnitary));
    }
}
