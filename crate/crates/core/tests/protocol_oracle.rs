mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::complex_gaussian;
use qpu_core::protocol::*;
use qpu_core::sim::{fidelity, RandomSource, StateVector};
use qpu_core::Complex64;

fn random_input(rng: &mut RandomSource) -> ProtocolInput {
    let c: Vec<Complex64> = (0..4).map(|_| complex_gaussian(rng)).collect();
    let n = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    ProtocolInput::new(c[0] / n, c[1] / n, c[2] / n, c[3] / n).unwrap()
}

fn mem_frame(level: u8) -> u8 {
    (level >= 2) as u8
}

#[test]
fn zero_time_returns_initial_amplitudes() {
    let a = Complex64::new(0.6, 0.0);
    let b = Complex64::new(0.0, 0.8);
    let p = CavityAtomParams { kappa: Complex64::new(0.4, 0.2), omega_a: 1.0, omega_b: 0.3, t: 0.0 };
    assert_eq!(rabi_coefficients(a, b, &p).unwrap(), (a, b));
}

#[test]
fn resonant_transfer_is_complete() {
    for k in [0.5, 1.0, 3.0] {
        let p = CavityAtomParams { kappa: Complex64::new(k, 0.0), omega_a: 2.0, omega_b: 2.0, t: FRAC_PI_2 / k };
        let (_, c2) = rabi_coefficients(Complex64::ONE, Complex64::ZERO, &p).unwrap();
        assert!((c2.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn detuned_maximum_matches_lorentzian() {
    let kappa = Complex64::new(0.3, 0.4);
    let delta = 1.7;
    let expected = 4.0 * kappa.norm_sqr() / (delta * delta + 4.0 * kappa.norm_sqr());
    let d = (delta * delta + 4.0 * kappa.norm_sqr()).sqrt();
    let mut best: f64 = 0.0;
    for i in 0..=4000 {
        let t = i as f64 * (2.0 * PI / d) / 4000.0;
        let p = CavityAtomParams { kappa, omega_a: 0.2 + delta, omega_b: 0.2, t };
        let (_, c2) = integrate_two_level(Complex64::ONE, Complex64::ZERO, &p, 400).unwrap();
        best = best.max(c2.norm_sqr());
    }
    assert!((best - expected).abs() < 1e-6, "{best} vs {expected}");
}

#[test]
fn closed_form_matches_integration_over_random_draws() {
    let mut rng = RandomSource::new(2024);
    for _ in 0..100 {
        let a = complex_gaussian(&mut rng);
        let b = complex_gaussian(&mut rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        let p = CavityAtomParams {
            kappa: complex_gaussian(&mut rng),
            omega_a: 2.0 * rng.uniform() - 1.0,
            omega_b: 2.0 * rng.uniform() - 1.0,
            t: 3.0 * rng.uniform(),
        };
        let closed = rabi_coefficients(a, b, &p).unwrap();
        let num = integrate_two_level(a, b, &p, 2000).unwrap();
        assert!((closed.0 - num.0).norm() < 1e-6 && (closed.1 - num.1).norm() < 1e-6);
        assert!((num.0.norm_sqr() + num.1.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn zero_coupling_only_rotates_phases() {
    let p = CavityAtomParams { kappa: Complex64::ZERO, omega_a: 1.1, omega_b: -0.4, t: 2.5 };
    let a = Complex64::new(0.6, 0.0);
    let b = Complex64::new(0.0, 0.8);
    let (c1, c2) = integrate_two_level(a, b, &p, 500).unwrap();
    assert!((c1.norm() - 0.6).abs() < 1e-12 && (c2.norm() - 0.8).abs() < 1e-12);
}

#[test]
fn zeeman_relative_phase() {
    let base = ZeemanParams { omega_0: 0.7, lande_g: 2.0, mu: 1.0, field: 0.0, t: 1.3 };
    let (c1, c2) = zeeman_phase(Complex64::ONE, Complex64::ONE, &base).unwrap();
    assert!((c1 - c2).norm() < 1e-15);
    // g mu B t = pi
    let p = ZeemanParams { field: PI / (2.0 * 1.3), ..base };
    let (c1, c2) = zeeman_phase(Complex64::ONE, Complex64::ONE, &p).unwrap();
    assert!((c1 / c2 - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    let (c1, c2) = zeeman_phase(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8), &p).unwrap();
    assert!((c1.norm() - 0.6).abs() < 1e-15 && (c2.norm() - 0.8).abs() < 1e-15);
}

fn apply(state: &ProtocolState, op: ElementaryOp, conv: Convention) -> StateVector {
    let s = elementary_unitary(op, conv).unwrap();
    state.state().apply_local(&s.unitary, &s.targets).unwrap()
}

#[test]
fn elementary_examples() {
    let alpha = ProtocolState::initial(&ProtocolInput::basis(0));
    let after_u = apply(&alpha, ElementaryOp::u(Site::A, 2, 3), Convention::Ideal);
    let shape = protocol_shape();
    let cfg = Config::new(0, 2, 0, 1, 0, 1);
    assert_eq!(after_u.amplitude(&cfg.levels()).unwrap(), Complex64::ONE);

    let s = elementary_unitary(ElementaryOp::r(Site::A, 1, 2), Convention::Ideal).unwrap();
    let after_r = after_u.apply_local(&s.unitary, &s.targets).unwrap();
    assert_eq!(after_r.amplitude(&Config::new(1, 1, 0, 1, 0, 1).levels()).unwrap(), Complex64::ONE);

    let photon = StateVector::basis_state(shape, &Config::new(1, 1, 0, 1, 0, 1).levels()).unwrap();
    let q = elementary_unitary(ElementaryOp::q(Site::A, Site::B), Convention::Physical).unwrap();
    let moved = photon.apply_local(&q.unitary, &q.targets).unwrap();
    assert_eq!(moved.amplitude(&Config::new(0, 1, 1, 1, 0, 1).levels()).unwrap(), Complex64::I);
}

#[test]
fn sequence_endpoints() {
    let seq = protocol_sequence();
    assert_eq!(seq[0].factors, [ElementaryOp::u(Site::A, 2, 3), ElementaryOp::r(Site::A, 1, 2)]);
    assert_eq!(
        seq.last().unwrap().factors,
        [ElementaryOp::q(Site::A, Site::B), ElementaryOp::r(Site::A, 2, 1), ElementaryOp::u(Site::A, 3, 2)]
    );
}

#[test]
fn every_op_is_a_phased_permutation() {
    let ops = [
        ElementaryOp::r(Site::A, 1, 2),
        ElementaryOp::r(Site::B, 2, 3),
        ElementaryOp::u(Site::C, 0, 3),
        ElementaryOp::u(Site::B, 1, 3),
        ElementaryOp::q(Site::C, Site::A),
    ];
    for conv in [Convention::Ideal, Convention::Physical] {
        for op in ops {
            let s = elementary_unitary(op, conv).unwrap();
            assert!(s.unitary.is_unitary(1e-12));
            let n = s.unitary.size();
            for r in 0..n {
                let nz: Vec<Complex64> = (0..n).map(|c| s.unitary.get(r, c)).filter(|z| z.norm() > 0.0).collect();
                assert_eq!(nz.len(), 1);
                let want = if conv == Convention::Ideal { vec![Complex64::ONE] } else { vec![Complex64::ONE, Complex64::I] };
                assert!(want.contains(&nz[0]));
            }
        }
    }
}

#[test]
fn sequence_ops_conserve_excitation_on_every_basis_state() {
    let shape = protocol_shape();
    for step in protocol_sequence() {
        for op in step.factors {
            let s = elementary_unitary(op, Convention::Ideal).unwrap();
            for index in 0..shape.dimension() {
                let cfg = Config::from_levels(&shape.levels_of(index));
                let basis = StateVector::basis_state(shape.clone(), &cfg.levels()).unwrap();
                let out = basis.apply_local(&s.unitary, &s.targets).unwrap();
                let j = out.amplitudes().iter().position(|a| a.norm() > 0.0).unwrap();
                let image = Config::from_levels(&shape.levels_of(j));
                assert_eq!(excitation_number(&image), excitation_number(&cfg), "{op} on {cfg}");
            }
        }
    }
}

#[test]
fn intermediate_states_match_the_table_for_random_inputs() {
    let mut rng = RandomSource::new(11);
    for _ in 0..20 {
        let input = random_input(&mut rng);
        let run = run_protocol(&input, Convention::Ideal);
        for k in 1..=12 {
            assert!((run.state(k).state().norm_sqr() - 1.0).abs() < 1e-12);
            let cmp = compare_step(k, run.state(k), &input);
            assert!(cmp.exact, "state {k}");
            assert!((cmp.fidelity - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn basis_inputs_land_on_printed_final_terms() {
    for (k, want) in [(0, Config::new(0, 0, 0, 1, 0, 1)), (2, Config::new(0, 1, 0, 3, 0, 0))] {
        let run = run_protocol(&ProtocolInput::basis(k), Convention::Ideal);
        let relabeled = run.final_state().relabel_memories(mem_frame).unwrap();
        assert_eq!(relabeled.support(), vec![(want, Complex64::ONE)]);
        assert_eq!(printed_terms(12)[k].1, want);
    }
}

#[test]
fn final_state_matches_printed_terms() {
    let mut rng = RandomSource::new(5);
    for _ in 0..100 {
        let input = random_input(&mut rng);
        let run = run_protocol(&input, Convention::Ideal);
        let relabeled = run.final_state().relabel_memories(mem_frame).unwrap();
        let printed = printed_state(12, &input);
        let f = fidelity(relabeled.state(), printed.state()).unwrap();
        assert!(f > 1.0 - 1e-10, "{f}");
    }
}

#[test]
fn beta_input_transfers() {
    let mut rng = RandomSource::new(0);
    let run = run_protocol(&ProtocolInput::basis(1), Convention::Ideal);
    let frame = logical_frame(run.final_state()).unwrap();
    // mem_a excited, control 0: |010>
    assert_eq!(frame[0b010], Complex64::ONE);
    let report = verify_against_cqet(1, Convention::Ideal, &mut rng).unwrap();
    assert_eq!(report.samples, 1);
}

#[test]
fn physical_convention_branch_phases() {
    let mut rng = RandomSource::new(3);
    let r = verify_against_cqet(10, Convention::Physical, &mut rng).unwrap();
    let want = [Complex64::I, -Complex64::I, Complex64::I, Complex64::ONE];
    for (got, want) in r.branch_phases.iter().zip(want) {
        assert!((got - want).norm() < 1e-12, "{got}");
    }
}

#[test]
fn ideal_protocol_differs_from_cqet_by_control_phase() {
    let mut rng = RandomSource::new(9);
    let r = verify_against_cqet(100, Convention::Ideal, &mut rng).unwrap();
    assert!(r.max_infidelity_control_phase < 1e-10);
    assert!(r.max_infidelity > 0.1);
    let want = [-Complex64::I, -Complex64::I, Complex64::ONE, Complex64::ONE];
    for (got, want) in r.branch_phases.iter().zip(want) {
        assert!((got - want).norm() < 1e-12);
    }
}
