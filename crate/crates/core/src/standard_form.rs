//! Trace decompositions and the phase-fixed standard form.
//!
//! The standard form of a state is reached in two steps. Every single-qubit
//! reduced state is diagonalized with descending eigenvalues (the sorted trace
//! decomposition), which leaves a residual freedom of local phase gates and a
//! global phase. That freedom is then spent making a selected set of
//! amplitudes real and positive. For states with no maximally mixed qubit the
//! result is unique, so two such states are LU-equivalent exactly when their
//! standard forms agree.

use crate::eig2::{eig_hermitian2, Spectrum2};
use crate::error::{LuError, Result};
use crate::lattice::{solve_congruence, RowSpace};
use crate::linalg::{wrap_angle, Unitary2};
use crate::phase_gates::{apply_phase_vector, basis_row, PhaseVector};
use crate::state::{apply_layer, LocalUnitaryLayer, PureState, ToleranceContext};
use crate::verdict::Verdict;

/// Support of a state and the rows used to fix its phases.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportStructure {
    /// Basis indices with nonzero amplitude, ascending.
    pub support: Vec<usize>,
    /// Greedy lexicographic maximal subset of `support` whose bitstrings are
    /// linearly independent as real 0/1 vectors.
    pub independent: Vec<usize>,
    /// Bitstring whose amplitude fixes the global phase.
    pub anchor: usize,
}

#[derive(Clone, Debug)]
pub struct StandardFormResult {
    pub canonical: PureState,
    /// Maps the input onto `canonical`.
    pub layer: LocalUnitaryLayer,
    /// Single-qubit spectra of the input, one per qubit.
    pub spectra: Vec<Spectrum2>,
    /// No single-qubit reduced state is degenerate.
    pub generic: bool,
    pub phases: Option<PhaseVector>,
    pub support: Option<SupportStructure>,
}

impl StandardFormResult {
    /// Smallest single-qubit eigenvalue gap.
    pub fn min_gap(&self) -> f64 {
        self.spectra.iter().map(Spectrum2::gap).fold(f64::INFINITY, f64::min)
    }

    /// Some qubit's gap lies in the undecidable band `(tol, 10 tol]`.
    pub fn borderline(&self, tol: &ToleranceContext) -> bool {
        self.spectra
            .iter()
            .any(|s| s.gap() > tol.degeneracy && s.gap() <= 10.0 * tol.degeneracy)
    }
}

pub fn single_qubit_spectra(state: &PureState) -> Result<Vec<Spectrum2>> {
    (0..state.n())
        .map(|q| eig_hermitian2(&state.partial_trace(&[q])?, state.tol()))
        .collect()
}

fn decompose(state: &PureState, keep_diagonal: bool) -> Result<StandardFormResult> {
    let tol = state.tol();
    let spectra = single_qubit_spectra(state)?;
    let factors: Vec<Unitary2> = (0..state.n())
        .map(|q| {
            let rho = state.partial_trace(&[q])?.as_mat2().expect("single-qubit marginal");
            let diagonal = rho.get(0, 1).norm() <= tol.hermitian;
            Ok(if keep_diagonal && diagonal {
                Unitary2::identity()
            } else {
                spectra[q].diagonalizer
            })
        })
        .collect::<Result<_>>()?;
    let layer = LocalUnitaryLayer::new(0.0, factors);
    let canonical = apply_layer(&layer, state)?;
    let generic = spectra.iter().all(|s| !s.degenerate);
    Ok(StandardFormResult {
        canonical,
        layer,
        spectra,
        generic,
        phases: None,
        support: None,
    })
}

/// Diagonalizes every single-qubit reduced state. Qubits whose reduced state
/// is already diagonal are left untouched.
pub fn trace_decomposition(state: &PureState) -> Result<StandardFormResult> {
    decompose(state, true)
}

/// Trace decomposition with descending diagonals on every qubit.
pub fn sorted_trace_decomposition(state: &PureState) -> Result<StandardFormResult> {
    decompose(state, false)
}

pub fn support_structure(state: &PureState) -> SupportStructure {
    let n = state.n();
    let support: Vec<usize> = (0..state.dim())
        .filter(|&i| state.amplitude(i).norm() > state.tol().norm)
        .collect();
    let mut space = RowSpace::new();
    let mut independent = Vec::new();
    let mut first_dependent = None;
    for &i in &support {
        let bits: Vec<i64> = basis_row(n, i)[1..].to_vec();
        if space.insert(&bits) {
            independent.push(i);
        } else if first_dependent.is_none() {
            first_dependent = Some(i);
        }
    }
    let anchor = first_dependent.or_else(|| support.first().copied()).unwrap_or(0);
    SupportStructure {
        support,
        independent,
        anchor,
    }
}

/// Spends the phase-gate freedom of a sorted trace decomposition.
///
/// Rows `{anchor} ∪ independent` (in that priority, skipping any row that is
/// dependent once the global-phase column is included) are made real and
/// positive. Angles the rows leave undetermined are pinned to zero. When the
/// selected rows admit several solutions modulo 2pi, the one giving the
/// smallest phases on the remaining support (in lexicographic order) is
/// returned, so the result does not depend on the input's phase gauge.
pub fn fix_phases(state: &PureState) -> Result<(PureState, PhaseVector)> {
    let n = state.n();
    let tol = *state.tol();
    let support = support_structure(state);
    let mut priority = vec![support.anchor];
    priority.extend(support.independent.iter().copied().filter(|&i| i != support.anchor));

    let mut space = RowSpace::new();
    let mut selected = Vec::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for &i in &priority {
        let row = basis_row(n, i);
        if state.amplitude(i).norm() > tol.norm && space.insert(&row) {
            selected.push(i);
            rhs.push(-state.amplitude(i).arg());
            rows.push(row);
        }
    }
    let congruence = solve_congruence(&rows, &rhs)
        .ok_or_else(|| LuError::Precondition("phase rows are not independent".into()))?;

    let others: Vec<usize> = support
        .support
        .iter()
        .copied()
        .filter(|i| !selected.contains(i))
        .collect();
    let key = |cand: &[f64]| -> Vec<f64> {
        others
            .iter()
            .map(|&i| {
                let shift: f64 = basis_row(n, i).iter().zip(cand).map(|(&c, &a)| c as f64 * a).sum();
                let w = wrap_angle(state.amplitude(i).arg() + shift);
                if std::f64::consts::TAU - w <= tol.phase {
                    0.0
                } else {
                    w
                }
            })
            .collect()
    };
    let mut best = congruence.candidates[0].clone();
    let mut best_key = key(&best);
    for cand in &congruence.candidates[1..] {
        let k = key(cand);
        let smaller = k
            .iter()
            .zip(&best_key)
            .find(|(a, b)| (*a - *b).abs() > 10.0 * tol.phase)
            .is_some_and(|(a, b)| a < b);
        if smaller {
            best = cand.clone();
            best_key = k;
        }
    }

    let phases = PhaseVector::new(
        best[0],
        best[1..].to_vec(),
        (1..=n).map(|c| !congruence.pivots.contains(&c)).collect(),
    );
    let mut amp = apply_phase_vector(state.amplitudes(), n, &phases);
    for &i in &selected {
        amp[i] = amp[i].norm().into();
    }
    Ok((PureState::from_parts(n, amp, tol), phases))
}

/// Sorted trace decomposition followed by phase fixing.
pub fn standard_form(state: &PureState) -> Result<StandardFormResult> {
    let sorted = sorted_trace_decomposition(state)?;
    let support = support_structure(&sorted.canonical);
    let (canonical, phases) = fix_phases(&sorted.canonical)?;
    let factors = sorted
        .layer
        .factors()
        .iter()
        .zip(&phases.alpha)
        .map(|(w, &a)| Unitary2::phase_gate(a) * *w)
        .collect();
    let layer = LocalUnitaryLayer::new(phases.alpha0, factors);
    Ok(StandardFormResult {
        canonical,
        layer,
        spectra: sorted.spectra,
        generic: sorted.generic,
        phases: Some(phases),
        support: Some(support),
    })
}

/// Outcome of comparing two lists of single-qubit spectra.
pub(crate) enum SpectraCheck {
    Match,
    Mismatch(Verdict),
    Borderline(String),
}

pub(crate) fn compare_spectra(a: &[Spectrum2], b: &[Spectrum2], tol: &ToleranceContext) -> SpectraCheck {
    let mut borderline = None;
    for (q, (sa, sb)) in a.iter().zip(b).enumerate() {
        let diff = (sa.lambda1 - sb.lambda1).abs().max((sa.lambda2 - sb.lambda2).abs());
        if diff > 10.0 * tol.degeneracy {
            return SpectraCheck::Mismatch(Verdict::not_equivalent(
                format!(
                    "single-qubit spectra differ on qubit {q}: ({:.10}, {:.10}) vs ({:.10}, {:.10})",
                    sa.lambda1, sa.lambda2, sb.lambda1, sb.lambda2
                ),
                diff,
            ));
        }
        if diff > tol.degeneracy && borderline.is_none() {
            borderline = Some(format!("single-qubit spectra of qubit {q} agree only to {diff:.2e}"));
        }
    }
    match borderline {
        Some(reason) => SpectraCheck::Borderline(reason),
        None => SpectraCheck::Match,
    }
}

/// Decides LU-equivalence of two states with non-degenerate single-qubit
/// spectra by comparing their standard forms.
///
/// The certificate maps `phi` onto `psi`: with `L_psi psi = L_phi phi`
/// canonical, it is `L_psi^dagger L_phi`.
pub fn check_generic_equivalence(psi: &PureState, phi: &PureState) -> Result<Verdict> {
    if psi.n() != phi.n() {
        return Err(LuError::SizeMismatch {
            expected: psi.n(),
            found: phi.n(),
        });
    }
    let tol = *psi.tol();
    let sf_psi = standard_form(psi)?;
    let sf_phi = standard_form(phi)?;
    if !sf_psi.generic || !sf_phi.generic {
        return Err(LuError::Precondition(
            "both states must have non-degenerate single-qubit spectra; use decide_lu_equivalence".into(),
        ));
    }
    match compare_spectra(&sf_psi.spectra, &sf_phi.spectra, &tol) {
        SpectraCheck::Mismatch(v) => return Ok(v),
        SpectraCheck::Borderline(reason) => return Ok(Verdict::undetermined(reason)),
        SpectraCheck::Match => {}
    }
    if sf_psi.borderline(&tol) || sf_phi.borderline(&tol) {
        return Ok(Verdict::undetermined(
            "a single-qubit eigenvalue gap is too close to the degeneracy threshold",
        ));
    }

    let (mut worst, mut worst_index) = (0.0f64, 0usize);
    for (i, (a, b)) in sf_psi
        .canonical
        .amplitudes()
        .iter()
        .zip(sf_phi.canonical.amplitudes())
        .enumerate()
    {
        let d = (a - b).norm();
        if d > worst {
            worst = d;
            worst_index = i;
        }
    }
    if worst <= tol.phase {
        let certificate = sf_psi.layer.adjoint().compose(&sf_phi.layer)?;
        let residual = crate::solver::verify_certificate(psi, phi, &certificate)?;
        if residual <= tol.fidelity_accept {
            return Ok(Verdict::Equivalent { certificate, residual });
        }
        return Ok(Verdict::undetermined(format!(
            "standard forms agree but the certificate residual is {residual:.2e}"
        )));
    }
    if worst > 10.0 * tol.phase {
        let first = sf_psi
            .canonical
            .amplitudes()
            .iter()
            .zip(sf_phi.canonical.amplitudes())
            .position(|(a, b)| (a - b).norm() > 10.0 * tol.phase)
            .unwrap_or(worst_index);
        return Ok(Verdict::not_equivalent(
            format!(
                "standard forms differ first at basis index {first:#b} (largest difference {worst:.3e} at {worst_index:#b})"
            ),
            worst,
        ));
    }
    Ok(Verdict::undetermined(format!(
        "standard forms differ by {worst:.2e}, inside the undecidable band"
    )))
}
