use std::f64::consts::TAU;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::Result;
use crate::linalg::Unitary2;
use crate::optimize::NelderMead;
use crate::phase_gates::{best_phase_overlap, PhaseVector};
use crate::state::PureState;
use crate::verdict::{Diagnostics, Verdict};

use super::chain::DependencyChain;
use super::{apply_flips, flip_patterns, verify_certificate, SolverConfig};

/// `e^{-i gamma Z} e^{-i beta X} e^{-i alpha Z}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerZXZ {
    pub gamma: f64,
    pub beta: f64,
    pub alpha: f64,
}

impl EulerZXZ {
    pub fn new(gamma: f64, beta: f64, alpha: f64) -> Self {
        EulerZXZ { gamma, beta, alpha }
    }

    pub fn from_slice(x: &[f64]) -> Self {
        EulerZXZ::new(x[0], x[1], x[2])
    }

    pub fn unitary(&self) -> Unitary2 {
        Unitary2::rz(self.gamma) * Unitary2::rx(self.beta) * Unitary2::rz(self.alpha)
    }
}

/// Best point seen by the search.
struct Best {
    residual: f64,
    flips: Vec<bool>,
    phases: PhaseVector,
    r: Vec<Unitary2>,
}

fn assignment_of(x: &[f64]) -> Vec<Unitary2> {
    x.chunks(3).map(|c| EulerZXZ::from_slice(c).unitary()).collect()
}

/// Multi-start Nelder-Mead over the Euler angles of the chain variables,
/// minimizing `1 - max_flips max_phases |<R psi| P V phi>|`.
pub(super) fn search_variables(
    psi: &PureState,
    phi: &PureState,
    chain: &DependencyChain,
    config: &SolverConfig,
) -> Result<Verdict> {
    let n = chain.n;
    let tol = *psi.tol();
    let dims = 3 * chain.variable_count();
    let patterns = flip_patterns(n, &chain.flip_qubits());
    let reference = chain.reference.amplitudes();

    let mut best: Option<Best> = None;
    let objective = |x: &[f64], best: &mut Option<Best>| -> f64 {
        let assignment = assignment_of(x);
        let ev = chain.evaluate(psi, &assignment).expect("assignment sized by the chain");
        let mut local = f64::INFINITY;
        for flips in &patterns {
            let mut amp = ev.rotated.clone();
            apply_flips(&mut amp, n, flips);
            let (phases, fidelity) = best_phase_overlap(&amp, reference, n);
            let residual = (1.0 - fidelity).max(0.0);
            if residual < local {
                local = residual;
            }
            if best.as_ref().map_or(true, |b| residual < b.residual) {
                *best = Some(Best {
                    residual,
                    flips: flips.clone(),
                    phases,
                    r: ev.r.clone(),
                });
            }
        }
        local
    };

    let nm = NelderMead {
        max_iterations: config.max_iterations,
        target: tol.fidelity_accept,
        step: 0.5,
        x_tol: 1e-13,
    };
    let mut rng = Pcg64::seed_from_u64(config.seed);
    let mut evaluations = 0;
    let mut attempts = 0;
    let mut rejected_residual: Option<f64> = None;
    for start in 0..config.restarts.max(1) {
        attempts += 1;
        let x0: Vec<f64> = if start == 0 {
            vec![0.0; dims]
        } else {
            (0..dims).map(|_| rng.random::<f64>() * TAU).collect()
        };
        let m = nm.minimize(|x| objective(x, &mut best), &x0);
        evaluations += m.evaluations;
        if m.value > tol.fidelity_accept {
            continue;
        }
        let b = best.as_ref().expect("objective was evaluated");
        let certificate = chain.certificate(&b.r, &b.flips, b.phases.alpha0, &b.phases.alpha);
        let residual = verify_certificate(psi, phi, &certificate)?;
        if residual <= tol.fidelity_accept {
            return Ok(Verdict::Equivalent { certificate, residual });
        }
        rejected_residual = Some(residual);
    }
    let best_residual = best.map(|b| b.residual);
    let reason = match rejected_residual {
        Some(r) => format!("search converged but the assembled certificate has residual {r:.2e}"),
        None => "variable search did not reach the acceptance threshold".to_string(),
    };
    Ok(Verdict::Undetermined {
        diagnostics: Diagnostics {
            reason,
            variables: chain.variable_count(),
            restarts: attempts,
            evaluations,
            best_residual,
        },
    })
}
