//! Deciding whether two states differ only by local phase gates
//! `diag(1, e^{i a_k})` and a global phase.
//!
//! The production path fits the phase ratios `arg(psi_i / phi_i)` on the
//! common support to an affine form `a0 + sum_k a_k i_k (mod 2pi)`. The
//! completion-based cross-ratio condition is kept in two forms (pairwise and
//! the literal four-copy contraction) as independent oracles.

use crate::error::{LuError, Result};
use crate::lattice::{solve_congruence, RowSpace};
use crate::linalg::{wrap_angle, Unitary2, C64};
use crate::state::{bit, check_qubits, complement, scatter, LocalUnitaryLayer, PureState};
use crate::verdict::Witness;

/// Global phase plus one phase-gate angle per qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector {
    pub alpha0: f64,
    pub alpha: Vec<f64>,
    /// Angles the constraints left undetermined (pinned to zero).
    pub free_mask: Vec<bool>,
}

impl PhaseVector {
    pub fn new(alpha0: f64, alpha: Vec<f64>, free_mask: Vec<bool>) -> Self {
        PhaseVector {
            alpha0: wrap_angle(alpha0),
            alpha: alpha.into_iter().map(wrap_angle).collect(),
            free_mask,
        }
    }

    pub fn zero(n: usize) -> Self {
        PhaseVector::new(0.0, vec![0.0; n], vec![false; n])
    }

    /// Total phase picked up by basis index `i`.
    pub fn phase_of(&self, n: usize, i: usize) -> f64 {
        self.alpha0
            + self
                .alpha
                .iter()
                .enumerate()
                .filter(|(q, _)| bit(i, n, *q) == 1)
                .map(|(_, a)| a)
                .sum::<f64>()
    }

    pub fn as_layer(&self) -> LocalUnitaryLayer {
        LocalUnitaryLayer::new(self.alpha0, self.alpha.iter().map(|&a| Unitary2::phase_gate(a)).collect())
    }
}

/// `(1, i_1, .., i_n)`: the coefficient row of basis index `i`.
pub fn basis_row(n: usize, i: usize) -> Vec<i64> {
    std::iter::once(1).chain((0..n).map(|q| bit(i, n, q) as i64)).collect()
}

pub(crate) fn apply_phase_vector(amp: &[C64], n: usize, phases: &PhaseVector) -> Vec<C64> {
    amp.iter()
        .enumerate()
        .map(|(i, a)| a * C64::from_polar(1.0, phases.phase_of(n, i)))
        .collect()
}

/// Bitstrings with vanishing amplitude, ascending.
pub fn support_complement(state: &PureState) -> Vec<usize> {
    (0..state.dim())
        .filter(|&i| state.amplitude(i).norm() <= state.tol().norm)
        .collect()
}

/// Which part of the phase-gate criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseCondition {
    Support,
    Moduli,
    AffinePhase,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhaseGateVerdict {
    /// `psi = e^{i a0} (x)_k diag(1, e^{i a_k}) phi`; `residual` is the
    /// largest per-amplitude deviation.
    Equivalent { phases: PhaseVector, residual: f64 },
    NotEquivalent { condition: PhaseCondition, witness: Witness },
    Undetermined { reason: String, residual: f64 },
}

impl PhaseGateVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, PhaseGateVerdict::Equivalent { .. })
    }
}

fn amplitude_residual(psi: &[C64], phi: &[C64], n: usize, phases: &PhaseVector) -> f64 {
    psi.iter()
        .zip(phi)
        .enumerate()
        .map(|(i, (a, b))| (a - b * C64::from_polar(1.0, phases.phase_of(n, i))).norm())
        .fold(0.0, f64::max)
}

/// Fits `arg(psi_i / phi_i) = a0 + a.i (mod 2pi)` on rows where both
/// amplitudes exceed `floor`, selecting independent rows by descending
/// `|phi_i|`, and returns the candidate with the smallest amplitude residual.
pub(crate) fn fit_phases(psi: &[C64], phi: &[C64], n: usize, floor: f64) -> (PhaseVector, f64) {
    let mut rows: Vec<usize> = (0..phi.len())
        .filter(|&i| psi[i].norm() > floor && phi[i].norm() > floor)
        .collect();
    rows.sort_by(|&a, &b| phi[b].norm().total_cmp(&phi[a].norm()).then(a.cmp(&b)));
    let mut space = RowSpace::new();
    let mut selected = Vec::new();
    let mut rhs = Vec::new();
    for &i in &rows {
        let row = basis_row(n, i);
        if space.insert(&row) {
            rhs.push((psi[i] / phi[i]).arg());
            selected.push(row);
        }
        if space.rank() == n + 1 {
            break;
        }
    }
    if selected.is_empty() {
        let pv = PhaseVector::new(0.0, vec![0.0; n], vec![true; n]);
        let r = amplitude_residual(psi, phi, n, &pv);
        return (pv, r);
    }
    let congruence = solve_congruence(&selected, &rhs).expect("rows selected independent");
    let free_mask: Vec<bool> = (1..=n).map(|c| !congruence.pivots.contains(&c)).collect();
    congruence
        .candidates
        .iter()
        .map(|cand| {
            let pv = PhaseVector::new(cand[0], cand[1..].to_vec(), free_mask.clone());
            let r = amplitude_residual(psi, phi, n, &pv);
            (pv, r)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one candidate")
}

/// Maximizes `|<psi| e^{i a0} P(a) |phi>|` over the phase layer `P(a)`.
///
/// Starts from the congruence fit on the largest amplitudes and refines by
/// exact coordinate ascent; `a0` is chosen so the overlap is real positive.
pub(crate) fn best_phase_overlap(psi: &[C64], phi: &[C64], n: usize) -> (PhaseVector, f64) {
    let (mut pv, _) = fit_phases(psi, phi, n, 1e-12);
    let c: Vec<C64> = psi.iter().zip(phi).map(|(a, b)| a.conj() * b).collect();
    let total = |pv: &PhaseVector| -> C64 {
        c.iter()
            .enumerate()
            .map(|(i, z)| z * C64::from_polar(1.0, pv.phase_of(n, i)))
            .sum()
    };
    let mut best = total(&pv).norm();
    for _ in 0..100 {
        for q in 0..n {
            let (mut s0, mut s1) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            for (i, z) in c.iter().enumerate() {
                let t = z * C64::from_polar(1.0, pv.phase_of(n, i));
                if bit(i, n, q) == 1 {
                    s1 += t;
                } else {
                    s0 += t;
                }
            }
            if s1.norm() > 0.0 && s0.norm() > 0.0 {
                pv.alpha[q] = wrap_angle(pv.alpha[q] + s0.arg() - s1.arg());
            }
        }
        let value = total(&pv).norm();
        let gained = value - best;
        best = best.max(value);
        if gained <= 1e-15 {
            break;
        }
    }
    let t = total(&pv);
    pv.alpha0 = wrap_angle(pv.alpha0 - t.arg());
    (pv, t.norm())
}

/// Decides whether `psi = e^{i a0} (x)_k diag(1, e^{i a_k}) phi`.
pub fn solve_phase_gates(psi: &PureState, phi: &PureState) -> Result<PhaseGateVerdict> {
    if psi.n() != phi.n() {
        return Err(LuError::SizeMismatch {
            expected: psi.n(),
            found: phi.n(),
        });
    }
    let n = psi.n();
    let tol = psi.tol();
    let (a, b) = (psi.amplitudes(), phi.amplitudes());

    let mut support_gap = 0.0f64;
    let mut support_index = None;
    let mut moduli_gap = 0.0f64;
    let mut moduli_index = 0;
    for i in 0..a.len() {
        let (ma, mb) = (a[i].norm(), b[i].norm());
        let d = (ma - mb).abs();
        if (ma > tol.norm) != (mb > tol.norm) && d > support_gap {
            support_gap = d;
            support_index = Some(i);
        }
        if d > moduli_gap {
            moduli_gap = d;
            moduli_index = i;
        }
    }
    if let Some(i) = support_index.filter(|_| support_gap > 10.0 * tol.phase) {
        return Ok(PhaseGateVerdict::NotEquivalent {
            condition: PhaseCondition::Support,
            witness: Witness::new(format!("supports differ at basis index {i:#b}"), support_gap),
        });
    }
    if moduli_gap > 10.0 * tol.phase {
        return Ok(PhaseGateVerdict::NotEquivalent {
            condition: PhaseCondition::Moduli,
            witness: Witness::new(
                format!("amplitude moduli differ at basis index {moduli_index:#b}"),
                moduli_gap,
            ),
        });
    }

    let (phases, residual) = fit_phases(a, b, n, tol.norm);
    if residual <= tol.phase {
        Ok(PhaseGateVerdict::Equivalent { phases, residual })
    } else if residual > 10.0 * tol.phase {
        Ok(PhaseGateVerdict::NotEquivalent {
            condition: PhaseCondition::AffinePhase,
            witness: Witness::new("phase ratios admit no affine fit over the support", residual),
        })
    } else {
        Ok(PhaseGateVerdict::Undetermined {
            reason: "phase fit residual inside the undecidable band".into(),
            residual,
        })
    }
}

/// A state padded with unit-modulus amplitudes on its vanishing bitstrings.
#[derive(Clone, Debug)]
pub struct PhaseCompletion {
    pub base: PureState,
    /// Bitstrings with vanishing amplitude in `base`.
    pub missing: Vec<usize>,
    /// `(abar_0, .., abar_n)`; all zero for the plain completion.
    pub phases: Vec<f64>,
    /// Unnormalized completed amplitudes.
    pub amplitudes: Vec<C64>,
}

impl PhaseCompletion {
    /// `psi + sum_{k in K} |k>`.
    pub fn zero(base: &PureState) -> Self {
        Self::with_phases(base, &vec![0.0; base.n() + 1])
    }

    /// `psi + e^{-i abar_0} sum_{k in K} e^{-i sum_j abar_j k_j} |k>`.
    pub fn with_phases(base: &PureState, phases: &[f64]) -> Self {
        let n = base.n();
        assert_eq!(phases.len(), n + 1);
        let missing = support_complement(base);
        let mut amplitudes = base.amplitudes().to_vec();
        for &k in &missing {
            let angle: f64 = phases[0]
                + (0..n)
                    .filter(|&q| bit(k, n, q) == 1)
                    .map(|q| phases[q + 1])
                    .sum::<f64>();
            amplitudes[k] = C64::from_polar(1.0, -angle);
        }
        PhaseCompletion {
            base: base.clone(),
            missing,
            phases: phases.to_vec(),
            amplitudes,
        }
    }

    /// The completed vector, normalized.
    pub fn to_state(&self) -> PureState {
        let (mut s, _) = PureState::from_unnormalized(self.base.n(), self.amplitudes.clone())
            .expect("completion is nonzero");
        s.set_tolerance(*self.base.tol()).expect("inherited tolerances are valid");
        s
    }

    /// Projects back onto the support of `base`.
    pub fn project_to_support(amp: &[C64], missing: &[usize]) -> Vec<C64> {
        let mut out = amp.to_vec();
        for &k in missing {
            out[k] = C64::new(0.0, 0.0);
        }
        out
    }
}

const CROSS_RATIO_TOL: f64 = 1e-10;

fn same_product(lhs: C64, rhs: C64) -> bool {
    (lhs - rhs).norm() <= CROSS_RATIO_TOL * (lhs.norm() + rhs.norm())
}

/// Pairwise form of the cross-ratio condition on `qubit`:
/// `<0k|psi><1l|psi><1k|phi><0l|phi> = <1k|psi><0l|psi><0k|phi><1l|phi>` for
/// all bitstrings `k`, `l` of the other qubits. Pairs where one of the four
/// `phi` amplitudes vanishes impose nothing and are skipped.
pub fn condition_ii_pairwise(psi: &PureState, phi: &PureState, qubit: usize) -> Result<bool> {
    let n = psi.n();
    if phi.n() != n {
        return Err(LuError::SizeMismatch { expected: n, found: phi.n() });
    }
    if n < 2 {
        return Err(LuError::Precondition("cross-ratio condition needs at least two qubits".into()));
    }
    check_qubits(n, &[qubit])?;
    let rest = complement(n, &[qubit]);
    let one = 1usize << (n - 1 - qubit);
    let idx: Vec<usize> = (0..1usize << (n - 1)).map(|e| scatter(n, &rest, e)).collect();
    let (p, f) = (psi.amplitudes(), phi.amplitudes());
    let floor = phi.tol().norm;
    for &k in &idx {
        for &l in &idx {
            let (f0k, f1k, f0l, f1l) = (f[k], f[k | one], f[l], f[l | one]);
            if [f0k, f1k, f0l, f1l].iter().any(|z| z.norm() < floor) {
                continue;
            }
            let lhs = p[k] * p[l | one] * f1k * f0l;
            let rhs = p[k | one] * p[l] * f0k * f1l;
            if !same_product(lhs, rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Literal four-copy form: builds `|psi0>_A |psi0>_B |phi>_C |phi>_D`,
/// applies the matched-index projectors on `(A, C)` and `(B, D)` away from
/// `qubit`, and contracts `qubit` of the four copies with
/// `<0110| - <1001|`. True iff every resulting component vanishes.
pub fn condition_ii_fourcopy(psi0: &PureState, phi_abar: &PureState, qubit: usize) -> Result<bool> {
    let n = psi0.n();
    if phi_abar.n() != n {
        return Err(LuError::SizeMismatch { expected: n, found: phi_abar.n() });
    }
    if n > 3 {
        return Err(LuError::Unsupported(format!(
            "four-copy vector needs 2^(4n) entries; n = {n} exceeds 3"
        )));
    }
    if n < 2 {
        return Err(LuError::Precondition("cross-ratio condition needs at least two qubits".into()));
    }
    check_qubits(n, &[qubit])?;
    let dim = 1usize << n;
    let (p, f) = (psi0.amplitudes(), phi_abar.amplitudes());
    let mut four = vec![C64::new(0.0, 0.0); dim * dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let ab = p[a] * p[b];
            for c in 0..dim {
                let abc = ab * f[c];
                for d in 0..dim {
                    four[((a * dim + b) * dim + c) * dim + d] = abc * f[d];
                }
            }
        }
    }
    let entry = |a: usize, b: usize, c: usize, d: usize| four[((a * dim + b) * dim + c) * dim + d];

    let rest = complement(n, &[qubit]);
    let one = 1usize << (n - 1 - qubit);
    let idx: Vec<usize> = (0..1usize << (n - 1)).map(|e| scatter(n, &rest, e)).collect();
    for &k in &idx {
        for &l in &idx {
            // A and C share k, B and D share l; <0110| - <1001| on `qubit`.
            let plus = entry(k, l | one, k | one, l);
            let minus = entry(k | one, l, k, l | one);
            if !same_product(plus, minus) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `e^{i a0} (x)_k diag(1, e^{i a_k}) |state>`.
pub fn phase_layer_state(state: &PureState, phases: &PhaseVector) -> PureState {
    let amp = apply_phase_vector(state.amplitudes(), state.n(), phases);
    PureState::from_parts(state.n(), amp, *state.tol())
}
