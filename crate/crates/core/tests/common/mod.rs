#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

use luq_core::random::{haar_state, random_layer};
use luq_core::{apply_layer, LocalUnitaryLayer, PureState};

pub fn layered(layer: &LocalUnitaryLayer, state: &PureState) -> PureState {
    apply_layer(layer, state).unwrap()
}

pub fn haar(n: usize, rng: &mut rand_pcg::Pcg64) -> PureState {
    haar_state(n, rng).unwrap()
}

pub fn layer(n: usize, rng: &mut rand_pcg::Pcg64) -> LocalUnitaryLayer {
    random_layer(n, rng).unwrap()
}

/// Reduced density matrix by summing over every pair of basis indices that
/// agree outside `keep`.
pub fn reduced_oracle(state: &PureState, keep: &[usize]) -> DMatrix<Complex64> {
    let n = state.n();
    let d = 1usize << keep.len();
    let bit = |i: usize, q: usize| (i >> (n - 1 - q)) & 1;
    let kept = |i: usize| keep.iter().fold(0, |acc, &q| acc << 1 | bit(i, q));
    let rest_mask: usize = (0..n)
        .filter(|q| !keep.contains(q))
        .map(|q| 1usize << (n - 1 - q))
        .sum();
    let amp = state.amplitudes();
    let mut rho = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for i in 0..amp.len() {
        for j in 0..amp.len() {
            if i & rest_mask == j & rest_mask {
                rho[(kept(i), kept(j))] += amp[i] * amp[j].conj();
            }
        }
    }
    rho
}

/// Eigenvalues in descending order.
pub fn spectrum_oracle(rho: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = rho.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    if v.is_empty() {
        return f64::NAN;
    }
    v[v.len() / 2]
}
