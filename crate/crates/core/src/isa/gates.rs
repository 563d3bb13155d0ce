use num_complex::Complex64;

use crate::sim::LocalUnitary;

/// Two-qubit excitation transfer.
///
/// Basis order `|00>, |01>, |10>, |11>`; the `|01>, |10>` block is
/// `[[cos t/2, i sin t/2], [i sin t/2, cos t/2]]`.
pub fn qet_matrix(theta: f64) -> LocalUnitary {
    let c = Complex64::new(libm::cos(theta / 2.0), 0.0);
    let s = Complex64::new(0.0, libm::sin(theta / 2.0));
    LocalUnitary::from_fn([2, 2], |r, col| match (r, col) {
        (0, 0) | (3, 3) => Complex64::ONE,
        (1, 1) | (2, 2) => c,
        (1, 2) | (2, 1) => s,
        _ => Complex64::ZERO,
    })
    .expect("4x4 over two qubits")
}

/// `diag(1, e^{-i theta/2 + i phi/2}, e^{i theta/2 + i phi/2}, 1)`.
pub fn phase_matrix(theta: f64, phi: f64) -> LocalUnitary {
    let d1 = Complex64::from_polar(1.0, (-theta + phi) / 2.0);
    let d2 = Complex64::from_polar(1.0, (theta + phi) / 2.0);
    LocalUnitary::from_fn([2, 2], |r, c| match (r, c) {
        (0, 0) | (3, 3) => Complex64::ONE,
        (1, 1) => d1,
        (2, 2) => d2,
        _ => Complex64::ZERO,
    })
    .expect("4x4 over two qubits")
}

/// Controlled QET(pi) over (control, target1, target2).
///
/// The transfer block sits on indices 1 (`|001>`) and 2 (`|010>`), so the
/// exchange happens when the control qubit is `|0>`.
pub fn cqet_matrix() -> LocalUnitary {
    LocalUnitary::from_fn([2, 2, 2], |r, c| match (r, c) {
        (1, 2) | (2, 1) => Complex64::I,
        (1, 1) | (2, 2) => Complex64::ZERO,
        _ if r == c => Complex64::ONE,
        _ => Complex64::ZERO,
    })
    .expect("8x8 over three qubits")
}
