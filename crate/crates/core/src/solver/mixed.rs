use crate::error::{LuError, Result};
use crate::linalg::C64;
use crate::state::{apply_mat2, HermitianReduced, LocalUnitaryLayer, PureState, ToleranceContext, MAX_QUBITS};
use crate::verdict::Verdict;

use super::{decide_lu_equivalence, SolverConfig};

/// Frobenius distance below which a mixed-state certificate is accepted.
const MIXED_ACCEPT: f64 = 1e-8;

/// `L rho L^dagger` for a full-system operator.
pub fn apply_layer_to_operator(layer: &LocalUnitaryLayer, rho: &HermitianReduced) -> Result<Vec<C64>> {
    let d = rho.dim();
    let n = layer.n();
    if d != 1 << n || rho.qubits().len() != n {
        return Err(LuError::SizeMismatch { expected: 1 << n, found: d });
    }
    let mut m = rho.data().to_vec();
    // Columns: M -> L M.
    let mut col = vec![C64::new(0.0, 0.0); d];
    for c in 0..d {
        for r in 0..d {
            col[r] = m[r * d + c];
        }
        for (q, u) in layer.factors().iter().enumerate() {
            apply_mat2(&mut col, n, q, u.matrix());
        }
        for r in 0..d {
            m[r * d + c] = col[r];
        }
    }
    // Rows: M -> M L^dagger, i.e. each row transforms with conj(L).
    for r in 0..d {
        let row = &mut m[r * d..(r + 1) * d];
        for (q, u) in layer.factors().iter().enumerate() {
            apply_mat2(row, n, q, &u.matrix().conj());
        }
    }
    Ok(m)
}

fn frobenius(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Decides `sigma = L rho L^dagger` through the eigenvectors of
/// non-degenerate eigenvalues. An equivalent verdict reports the Frobenius
/// residual of the mapped operator.
pub fn mixed_state_criterion(
    rho: &HermitianReduced,
    sigma: &HermitianReduced,
    tol: &ToleranceContext,
    config: &SolverConfig,
) -> Result<Verdict> {
    tol.validate()?;
    let d = rho.dim();
    if sigma.dim() != d {
        return Err(LuError::SizeMismatch { expected: d, found: sigma.dim() });
    }
    if !d.is_power_of_two() || d < 2 {
        return Err(LuError::Precondition(format!("dimension {d} is not 2^n with n >= 1")));
    }
    let n = d.trailing_zeros() as usize;
    for m in [rho, sigma] {
        if m.qubits().len() != n {
            return Err(LuError::Precondition("mixed-state criterion needs full-system operators".into()));
        }
        let dev = m.hermitian_deviation();
        if dev > tol.hermitian {
            return Err(LuError::NotHermitian(dev));
        }
    }

    let (ev_rho, vec_rho) = rho.eigen();
    let (ev_sigma, vec_sigma) = sigma.eigen();
    let diff = ev_rho.iter().zip(&ev_sigma).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if diff > 10.0 * tol.degeneracy {
        return Ok(Verdict::not_equivalent(
            format!("operator spectra differ by {diff:.3e}"),
            diff,
        ));
    }
    if diff > tol.degeneracy {
        return Ok(Verdict::undetermined(format!("operator spectra agree only to {diff:.2e}")));
    }

    let isolated = |ev: &[f64], t: usize| {
        let gap = 10.0 * tol.degeneracy;
        (t == 0 || ev[t - 1] - ev[t] > gap) && (t + 1 == ev.len() || ev[t] - ev[t + 1] > gap)
    };
    let mut tried = false;
    let mut last_residual = None;
    for t in 0..d {
        if !isolated(&ev_rho, t) || !isolated(&ev_sigma, t) {
            continue;
        }
        tried = true;
        let phi = PureState::with_tolerance(n, vec_rho[t].clone(), *tol)?;
        let psi = PureState::with_tolerance(n, vec_sigma[t].clone(), *tol)?;
        match decide_lu_equivalence(&psi, &phi, config)? {
            Verdict::NotEquivalent { witness } => {
                return Ok(Verdict::not_equivalent(
                    format!("eigenvectors of eigenvalue {:.10}: {}", ev_rho[t], witness.description),
                    witness.margin,
                ));
            }
            Verdict::Equivalent { certificate, .. } => {
                let mapped = apply_layer_to_operator(&certificate, rho)?;
                let residual = frobenius(&mapped, sigma.data());
                if residual <= MIXED_ACCEPT {
                    return Ok(Verdict::Equivalent { certificate, residual });
                }
                last_residual = Some(residual);
            }
            Verdict::Undetermined { .. } => {}
        }
    }
    if !tried {
        return Ok(Verdict::undetermined("criterion inapplicable: no non-degenerate eigenvalue"));
    }
    if let Some(v) = joint_eigenvectors(rho, sigma, &ev_rho, &vec_rho, &vec_sigma, &isolated, tol, config)? {
        return Ok(v);
    }
    Ok(Verdict::undetermined(match last_residual {
        Some(r) => format!("eigenvector certificates do not map the operators (Frobenius residual {r:.2e})"),
        None => "no eigenvector pair could be decided".to_string(),
    }))
}

/// Decides all isolated eigenvectors at once. Each list of eigenvectors is
/// stored in one state `sum_k sqrt(w_k) |v_k>|e_k>`, where `e_k` flips
/// ancilla qubit `k` only and the weights `w_k` are distinct. The ancilla
/// marginal is then diagonal and non-degenerate on its support, so any
/// local layer relating the two states multiplies each `e_k` by a phase,
/// and its system part maps every eigenvector onto its partner.
#[allow(clippy::too_many_arguments)]
fn joint_eigenvectors(
    rho: &HermitianReduced,
    sigma: &HermitianReduced,
    ev_rho: &[f64],
    vec_rho: &[Vec<C64>],
    vec_sigma: &[Vec<C64>],
    isolated: &dyn Fn(&[f64], usize) -> bool,
    tol: &ToleranceContext,
    config: &SolverConfig,
) -> Result<Option<Verdict>> {
    let n = rho.qubits().len();
    let d = rho.dim();
    let ev_sigma = sigma.eigen().0;
    let mut picked: Vec<usize> = (0..d).filter(|&t| isolated(ev_rho, t) && isolated(&ev_sigma, t)).collect();
    picked.truncate(MAX_QUBITS.saturating_sub(n));
    let m = picked.len();
    if m < 2 {
        return Ok(None);
    }
    let total = (1u64 << m) as f64 - 1.0;
    let embed = |vecs: &[Vec<C64>]| -> Result<PureState> {
        let mut amp = vec![C64::new(0.0, 0.0); d << m];
        for (k, &t) in picked.iter().enumerate() {
            let w = ((1u64 << (m - 1 - k)) as f64 / total).sqrt();
            let flag = 1usize << (m - 1 - k);
            for (i, a) in vecs[t].iter().enumerate() {
                amp[(i << m) | flag] = a * w;
            }
        }
        PureState::with_tolerance(n + m, amp, *tol)
    };
    let phi = embed(vec_rho)?;
    let psi = embed(vec_sigma)?;
    match decide_lu_equivalence(&psi, &phi, config)? {
        Verdict::NotEquivalent { witness } => Ok(Some(Verdict::not_equivalent(
            format!("isolated eigenvectors cannot be mapped jointly: {}", witness.description),
            witness.margin,
        ))),
        Verdict::Equivalent { certificate, .. } => {
            let layer = LocalUnitaryLayer::new(certificate.global_phase(), certificate.factors()[..n].to_vec());
            let residual = frobenius(&apply_layer_to_operator(&layer, rho)?, sigma.data());
            Ok((residual <= MIXED_ACCEPT).then_some(Verdict::Equivalent {
                certificate: layer,
                residual,
            }))
        }
        Verdict::Undetermined { .. } => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Unitary2, C64, ZERO};

    fn projector(amp: &[C64]) -> Vec<C64> {
        let d = amp.len();
        let mut out = vec![ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                out[r * d + c] = amp[r] * amp[c].conj();
            }
        }
        out
    }

    #[test]
    fn pure_projector_is_self_equivalent() {
        let tol = ToleranceContext::default();
        let amp: Vec<C64> = [0.6, 0.0, 0.0, 0.8].iter().map(|&x| C64::new(x, 0.0)).collect();
        let rho = HermitianReduced::full_system(2, projector(&amp), &tol).unwrap();
        let v = mixed_state_criterion(&rho, &rho, &tol, &SolverConfig::default()).unwrap();
        assert!(v.is_equivalent(), "{v:?}");
    }

    #[test]
    fn different_spectra() {
        let tol = ToleranceContext::default();
        let mut a = vec![ZERO; 16];
        let mut b = vec![ZERO; 16];
        for (i, p) in [0.4, 0.3, 0.2, 0.1].iter().enumerate() {
            a[i * 5] = C64::new(*p, 0.0);
            b[i * 5] = C64::new(0.25, 0.0);
        }
        let rho = HermitianReduced::full_system(2, a, &tol).unwrap();
        let sigma = HermitianReduced::full_system(2, b, &tol).unwrap();
        let v = mixed_state_criterion(&rho, &sigma, &tol, &SolverConfig::default()).unwrap();
        assert!(v.is_not_equivalent());
        // The maximally mixed operator has no isolated eigenvalue.
        let v = mixed_state_criterion(&sigma, &sigma, &tol, &SolverConfig::default()).unwrap();
        assert!(v.is_undetermined());
    }

    #[test]
    fn layer_on_operator_matches_layer_on_vectors() {
        let tol = ToleranceContext::default();
        let amp: Vec<C64> = [0.5, 0.5, 0.5, -0.5].iter().map(|&x| C64::new(x, 0.0)).collect();
        let layer = LocalUnitaryLayer::new(0.4, vec![Unitary2::hadamard(), Unitary2::rz(0.3) * Unitary2::rx(0.9)]);
        let rho = HermitianReduced::full_system(2, projector(&amp), &tol).unwrap();
        let mapped = apply_layer_to_operator(&layer, &rho).unwrap();
        let s = crate::state::apply_layer(&layer, &PureState::new(2, amp).unwrap()).unwrap();
        assert!(frobenius(&mapped, &projector(s.amplitudes())) < 1e-14);
    }

    fn diagonal(weights: &[(usize, f64)]) -> Vec<C64> {
        let mut out = vec![ZERO; 16];
        for &(i, w) in weights {
            out[i * 5] = C64::new(w, 0.0);
        }
        out
    }

    #[test]
    fn eigenvectors_must_map_jointly() {
        let tol = ToleranceContext::default();
        let rho = HermitianReduced::full_system(2, diagonal(&[(0, 0.7), (1, 0.3)]), &tol).unwrap();
        let sigma = HermitianReduced::full_system(2, diagonal(&[(0, 0.7), (3, 0.3)]), &tol).unwrap();
        let v = mixed_state_criterion(&rho, &sigma, &tol, &SolverConfig::default()).unwrap();
        assert!(v.is_not_equivalent(), "{v:?}");
    }

    #[test]
    fn two_qubit_mixture_with_stabilizer() {
        let tol = ToleranceContext::default();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell: Vec<C64> = [s, 0.0, 0.0, s].iter().map(|&x| C64::new(x, 0.0)).collect();
        let mut data = projector(&bell);
        for (x, y) in data.iter_mut().zip(diagonal(&[(1, 1.0)])) {
            *x = *x * 0.6 + y * 0.4;
        }
        let rho = HermitianReduced::full_system(2, data, &tol).unwrap();
        let layer = LocalUnitaryLayer::new(0.0, vec![Unitary2::rz(0.7) * Unitary2::rx(1.1), Unitary2::hadamard()]);
        let sigma = HermitianReduced::full_system(2, apply_layer_to_operator(&layer, &rho).unwrap(), &tol).unwrap();
        match mixed_state_criterion(&rho, &sigma, &tol, &SolverConfig::default()).unwrap() {
            Verdict::Equivalent { certificate, .. } => {
                assert!(frobenius(&apply_layer_to_operator(&certificate, &rho).unwrap(), sigma.data()) < 1e-8);
            }
            v => panic!("{v:?}"),
        }
    }
}
