use std::f64::consts::TAU;

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{LuError, Result};
use crate::optimize::NelderMead;
use crate::state::{apply_layer, overlap, LocalUnitaryLayer, PureState};

use super::search::EulerZXZ;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// `1 - |<psi| L |phi>|` at the best layer found.
    pub residual: f64,
    pub layer: LocalUnitaryLayer,
    pub evaluations: usize,
}

fn layer_of(x: &[f64]) -> LocalUnitaryLayer {
    LocalUnitaryLayer::new(0.0, x.chunks(3).map(|c| EulerZXZ::from_slice(c).unitary()).collect())
}

/// Direct multi-start minimization of `1 - |<psi| L |phi>|` over all `3n`
/// Euler angles. Each start is refined by restarting the simplex at its
/// optimum until that stops helping. Deterministic for a fixed seed.
pub fn brute_force_oracle(psi: &PureState, phi: &PureState, restarts: usize, seed: u64) -> Result<OracleResult> {
    let n = psi.n();
    if phi.n() != n {
        return Err(LuError::SizeMismatch { expected: n, found: phi.n() });
    }
    let objective = |x: &[f64]| -> f64 {
        let mapped = apply_layer(&layer_of(x), phi).expect("sizes checked");
        (1.0 - overlap(psi, &mapped).expect("sizes checked").norm()).max(0.0)
    };
    let nm = NelderMead {
        max_iterations: 1000 * 3 * n,
        target: 1e-14,
        step: 0.5,
        x_tol: 1e-14,
    };
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut best_x = vec![0.0; 3 * n];
    let mut best_value = objective(&best_x);
    let mut evaluations = 1;
    for start in 0..restarts.max(1) {
        let mut x: Vec<f64> = if start == 0 {
            vec![0.0; 3 * n]
        } else {
            (0..3 * n).map(|_| rng.random::<f64>() * TAU).collect()
        };
        let mut value = f64::INFINITY;
        let mut step = nm.step;
        for _ in 0..8 {
            let m = NelderMead { step, ..nm }.minimize(objective, &x);
            evaluations += m.evaluations;
            let improved = m.value < value - 1e-15;
            x = m.x;
            value = m.value;
            if !improved || value <= nm.target {
                break;
            }
            step = (step * 0.5).max(1e-3);
        }
        if value < best_value {
            best_value = value;
            best_x = x;
        }
        if best_value <= nm.target {
            break;
        }
    }
    let layer = layer_of(&best_x);
    let phase = overlap(psi, &apply_layer(&layer, phi)?)?.arg();
    let layer = LocalUnitaryLayer::new(-phase, layer.factors().to_vec());
    Ok(OracleResult {
        residual: best_value,
        layer,
        evaluations,
    })
}
