mod common;

use common::{haar, layer, layered, reduced_oracle, spectrum_oracle};
use std::f64::consts::FRAC_1_SQRT_2;

use luq_core::random::{ghz, rng, w_state};
use luq_core::solver::{brute_force_oracle, build_chain, ChainResult};
use luq_core::{
    decide_lu_equivalence, solve_phase_gates, verify_certificate, PhaseGateVerdict, PureState, SolverConfig, Verdict,
    C64,
};

fn real_state(n: usize, terms: &[(usize, f64)]) -> PureState {
    let mut amp = vec![C64::new(0.0, 0.0); 1 << n];
    for &(i, a) in terms {
        amp[i] = C64::new(a, 0.0);
    }
    PureState::new(n, amp).unwrap()
}

fn bell() -> PureState {
    real_state(2, &[(0, FRAC_1_SQRT_2), (3, FRAC_1_SQRT_2)])
}

#[test]
fn bell_certificates_lie_in_the_symmetry_family() {
    let mut r = rng(31);
    for _ in 0..50 {
        let l = layer(2, &mut r);
        let psi = layered(&l, &bell());
        let v = decide_lu_equivalence(&psi, &bell(), &SolverConfig::default()).unwrap();
        let cert = v.certificate().expect("equivalent");
        let u = *l.factor(0).matrix() * l.factor(1).matrix().transpose();
        let w = *cert.factor(0).matrix() * cert.factor(1).matrix().transpose();
        let overlap = (w.adjoint() * u).trace().norm() / 2.0;
        assert!((overlap - 1.0).abs() < 1e-9, "overlap {overlap}");
    }
}

#[test]
fn ghz_sign_flip_phase_sum() {
    let plus = ghz(3).unwrap();
    let minus = real_state(3, &[(0, FRAC_1_SQRT_2), (7, -FRAC_1_SQRT_2)]);
    let PhaseGateVerdict::Equivalent { phases, .. } = solve_phase_gates(&minus, &plus).unwrap() else {
        panic!("expected a phase layer");
    };
    // Phase on |111> relative to |000> is the sum of the per-qubit phases.
    let rel = phases.phase_of(3, 7) - phases.phase_of(3, 0);
    assert!((rel.rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn ghz_recovery_uses_one_variable() {
    let g = ghz(3).unwrap();
    let mut r = rng(32);
    for _ in 0..10 {
        let psi = layered(&layer(3, &mut r), &g);
        let ChainResult::Chain(chain) = build_chain(&psi, &g).unwrap() else { panic!() };
        assert_eq!(chain.variable_count(), 1);
        let v = decide_lu_equivalence(&psi, &g, &SolverConfig::default()).unwrap();
        let Verdict::Equivalent { certificate, residual } = v else { panic!("{v:?}") };
        assert!(residual <= 1e-8);
        assert!(verify_certificate(&psi, &g, &certificate).unwrap() <= 1e-8);
    }
}

#[test]
fn crossed_bell_pairs_use_two_variables() {
    // Bell pairs on qubits (0, 2) and (1, 3): every single-qubit marginal and
    // the marginals of pairs (0, 1), (0, 3), (1, 2), (2, 3) are maximally mixed.
    let h = 0.5;
    let phi = real_state(4, &[(0b0000, h), (0b1010, h), (0b0101, h), (0b1111, h)]);
    for pair in [[0, 1], [0, 3], [1, 2], [2, 3]] {
        let ev = spectrum_oracle(&reduced_oracle(&phi, &pair));
        assert!(ev.iter().all(|e| (e - 0.25).abs() < 1e-12));
    }
    let mut r = rng(33);
    let psi = layered(&layer(4, &mut r), &phi);
    let ChainResult::Chain(chain) = build_chain(&psi, &phi).unwrap() else { panic!() };
    assert_eq!(chain.variable_count(), 2);
    let v = decide_lu_equivalence(&psi, &phi, &SolverConfig::default()).unwrap();
    assert!(v.is_equivalent(), "{v:?}");
}

#[test]
fn ghz_w_spectra_witness_and_oracle_floor() {
    let (g, w) = (ghz(3).unwrap(), w_state(3).unwrap());
    let gs = spectrum_oracle(&reduced_oracle(&g, &[0]));
    let ws = spectrum_oracle(&reduced_oracle(&w, &[0]));
    let gap = (gs[0] - ws[0]).abs();
    let v = decide_lu_equivalence(&g, &w, &SolverConfig::default()).unwrap();
    let witness = v.witness().expect("not equivalent");
    assert!((witness.margin - gap).abs() < 1e-12);
    let oracle = brute_force_oracle(&g, &w, 8, 34).unwrap();
    assert!(oracle.residual >= 0.02, "oracle residual {}", oracle.residual);
}

#[test]
fn generic_random_pairs_are_rejected() {
    let mut r = rng(35);
    for n in 2..=5 {
        let (a, b) = (haar(n, &mut r), haar(n, &mut r));
        let v = decide_lu_equivalence(&a, &b, &SolverConfig::default()).unwrap();
        assert!(v.is_not_equivalent(), "{v:?}");
    }
}

#[test]
fn verdicts_are_deterministic() {
    let g = ghz(3).unwrap();
    let psi = layered(&layer(3, &mut rng(36)), &g);
    let config = SolverConfig { seed: 9, ..SolverConfig::default() };
    let a = decide_lu_equivalence(&psi, &g, &config).unwrap();
    let b = decide_lu_equivalence(&psi, &g, &config).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}
