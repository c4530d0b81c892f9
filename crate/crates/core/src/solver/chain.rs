//! Dependency chains: which local unitaries are pinned by marginals, which
//! follow from conditional blocks of other qubits, and which remain free.
//!
//! Throughout, `psi` is the target and `phi` the reference, and the sought
//! layer satisfies `psi = e^{i a0} (U_1 x .. x U_n) phi`. Every qubit `k` gets
//! a reference-side rotation `V_k` and a target-side rotation `R_k`, chosen so
//! that `R_k U_k V_k^dagger` is a phase gate (possibly after a bit flip).

use std::collections::BTreeSet;

use crate::eig2::{eig_unchecked, Spectrum2};
use crate::error::{LuError, Result};
use crate::linalg::{Mat2, Unitary2, C64, I};
use crate::standard_form::{compare_spectra, single_qubit_spectra, SpectraCheck};
use crate::state::{
    apply_mat2, block_operator, check_qubits, conditional_state, Branch, LocalUnitaryLayer, PureState,
    ToleranceContext,
};
use crate::verdict::{Verdict, Witness};

use super::classify::{classify, ChainRole, EntanglementClass};

/// Largest conditioning set tried when extending a chain.
pub const MAX_CONDITIONING: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `X + X^dagger`
    Y,
    /// `i (X - X^dagger)`
    Z,
}

/// Hermitian parts of `X = tr_{not k}(|S_i><S_j|)`, where `S_i` is the
/// conditional block of the state for tuple `i` on the conditioning qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossBlockOperator {
    pub conditioning: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub target: usize,
    pub x: Mat2,
    pub y: Mat2,
    pub z: Mat2,
}

impl CrossBlockOperator {
    fn from_block(conditioning: Vec<usize>, i: usize, j: usize, target: usize, x: Mat2) -> Self {
        let (y, z) = hermitian_parts(&x);
        CrossBlockOperator {
            conditioning,
            i,
            j,
            target,
            x,
            y,
            z,
        }
    }

    /// `Y` unless `Z` is strictly further from a multiple of the identity.
    pub fn chosen(&self) -> (OperatorKind, Mat2) {
        if self.y.scalar_distance() > self.z.scalar_distance() {
            (OperatorKind::Y, self.y)
        } else {
            (OperatorKind::Z, self.z)
        }
    }

    /// The chosen operator is non-degenerate with a 10x margin.
    pub fn usable(&self, tol: &ToleranceContext) -> bool {
        self.chosen().1.scalar_distance() > 10.0 * tol.degeneracy
    }
}

fn hermitian_parts(x: &Mat2) -> (Mat2, Mat2) {
    let xd = x.adjoint();
    (*x + xd, (*x - xd).scale(I))
}

fn kind_matrix(x: &Mat2, kind: OperatorKind) -> Mat2 {
    let (y, z) = hermitian_parts(x);
    match kind {
        OperatorKind::Y => y,
        OperatorKind::Z => z,
    }
}

pub fn cross_block_operator(
    phi: &PureState,
    conditioning: &[usize],
    i: usize,
    j: usize,
    target: usize,
) -> Result<CrossBlockOperator> {
    let n = phi.n();
    let mut all = conditioning.to_vec();
    all.push(target);
    check_qubits(n, &all)?;
    let tuples = 1usize << conditioning.len();
    if i >= tuples || j >= tuples {
        return Err(LuError::Precondition(format!(
            "tuples ({i}, {j}) out of range for {} conditioning qubits",
            conditioning.len()
        )));
    }
    let x = block_operator(phi.amplitudes(), n, conditioning, i, j, target);
    Ok(CrossBlockOperator::from_block(conditioning.to_vec(), i, j, target, x))
}

/// Result of evaluating a determined qubit's target-side rotation.
#[derive(Clone, Debug, PartialEq)]
pub enum WkOutcome {
    Determined {
        w_bar: Unitary2,
        flip_allowed: bool,
        /// Largest eigenvalue difference to the reference operator.
        spectral_difference: f64,
    },
    Mismatch(Witness),
}

/// Builds the target-side counterpart of `op` on `assignment * psi`,
/// diagonalizes it and compares its spectrum with the reference operator.
pub fn evaluate_wk(
    op: &CrossBlockOperator,
    psi: &PureState,
    assignment: &LocalUnitaryLayer,
) -> Result<WkOutcome> {
    let tol = psi.tol();
    let rotated = crate::state::apply_layer(assignment, psi)?;
    let x = block_operator(rotated.amplitudes(), psi.n(), &op.conditioning, op.i, op.j, op.target);
    // Both Hermitian parts must be unitarily similar; either one can reject.
    for kd in [OperatorKind::Y, OperatorKind::Z] {
        let s_ref = eig_unchecked(&kind_matrix(&op.x, kd), tol.degeneracy);
        let s_tgt = eig_unchecked(&kind_matrix(&x, kd), tol.degeneracy);
        let diff = spectral_difference(&s_ref, &s_tgt);
        if diff > 10.0 * tol.degeneracy {
            return Ok(WkOutcome::Mismatch(Witness::new(
                format!(
                    "conditional block operator {kd:?} on qubit {} (conditioning {:?}, tuples {}/{}) has spectrum ({:.10}, {:.10}) vs ({:.10}, {:.10})",
                    op.target, op.conditioning, op.i, op.j, s_tgt.lambda1, s_tgt.lambda2, s_ref.lambda1, s_ref.lambda2
                ),
                diff,
            )));
        }
    }
    let (kind, reference) = op.chosen();
    let s_ref = eig_unchecked(&reference, tol.degeneracy);
    let s_psi = eig_unchecked(&kind_matrix(&x, kind), tol.degeneracy);
    let diff = spectral_difference(&s_ref, &s_psi);
    Ok(WkOutcome::Determined {
        w_bar: s_psi.diagonalizer,
        flip_allowed: s_psi.degenerate,
        spectral_difference: diff,
    })
}

fn spectral_difference(a: &Spectrum2, b: &Spectrum2) -> f64 {
    (a.lambda1 - b.lambda1).abs().max((a.lambda2 - b.lambda2).abs())
}

/// The `(i, j, kind)` choice that determined a qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub conditioning: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub kind: OperatorKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainEntry {
    pub qubit: usize,
    pub role: ChainRole,
    /// Reference-side rotation.
    pub v_bar: Unitary2,
    /// Target-side rotation when it does not depend on any variable.
    pub w_fixed: Option<Unitary2>,
    pub flip_allowed: bool,
    pub source: Option<Provenance>,
    /// Indices of the variables this entry depends on.
    pub depends_on: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct DependencyChain {
    pub n: usize,
    /// In evaluation order.
    pub entries: Vec<ChainEntry>,
    /// Qubits declared as variables, by variable index.
    pub variables: Vec<usize>,
    pub class: EntanglementClass,
    /// `(x)_k V_k phi`.
    pub reference: PureState,
}

/// Target-side rotations for one assignment and the rotated target.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub r: Vec<Unitary2>,
    pub rotated: Vec<C64>,
}

impl DependencyChain {
    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn entry(&self, qubit: usize) -> Option<&ChainEntry> {
        self.entries.iter().find(|e| e.qubit == qubit)
    }

    /// Qubits whose bit-flip freedom has to be enumerated.
    pub fn flip_qubits(&self) -> Vec<usize> {
        let mut q: Vec<usize> = self.entries.iter().filter(|e| e.flip_allowed).map(|e| e.qubit).collect();
        q.sort_unstable();
        q
    }

    /// Applies every `R_k` to `psi` in chain order; `assignment[v]` is the
    /// unitary of variable `v`.
    pub fn evaluate(&self, psi: &PureState, assignment: &[Unitary2]) -> Result<Evaluated> {
        if assignment.len() != self.variables.len() {
            return Err(LuError::SizeMismatch {
                expected: self.variables.len(),
                found: assignment.len(),
            });
        }
        let n = self.n;
        let mut amp = psi.amplitudes().to_vec();
        let mut r = vec![Unitary2::identity(); n];
        for e in &self.entries {
            let rk = match (&e.role, e.w_fixed) {
                (ChainRole::Variable(v), _) => assignment[*v].adjoint(),
                (_, Some(w)) => w,
                (ChainRole::Determined { .. }, None) => {
                    let p = e.source.as_ref().expect("determined entries record their source");
                    let x = block_operator(&amp, n, &p.conditioning, p.i, p.j, e.qubit);
                    eig_unchecked(&kind_matrix(&x, p.kind), psi.tol().degeneracy).diagonalizer
                }
                (role, None) => unreachable!("entry for qubit {} has role {role:?} without rotation", e.qubit),
            };
            apply_mat2(&mut amp, n, e.qubit, rk.matrix());
            r[e.qubit] = rk;
        }
        Ok(Evaluated { r, rotated: amp })
    }

    /// `U_k = R_k^dagger X^{f_k} P(a_k) V_k` with global phase `a0`.
    pub fn certificate(&self, r: &[Unitary2], flips: &[bool], alpha0: f64, alpha: &[f64]) -> LocalUnitaryLayer {
        let factors = (0..self.n)
            .map(|q| {
                let v = self.entry(q).map_or(Unitary2::identity(), |e| e.v_bar);
                r[q].adjoint() * Unitary2::flip(flips[q]) * Unitary2::phase_gate(alpha[q]) * v
            })
            .collect();
        LocalUnitaryLayer::new(alpha0, factors)
    }
}

/// One measurement outcome on the target and the reference.
#[derive(Clone, Debug)]
pub struct BranchPair {
    pub outcome: usize,
    pub psi: Branch,
    pub phi: Branch,
}

/// Rotates `qubit` of both states into their local eigenbases and projects
/// it onto `|0>` and `|1>`.
pub fn project_and_reduce(
    psi: &PureState,
    phi: &PureState,
    qubit: usize,
    w_bar: &Unitary2,
    v_bar: &Unitary2,
) -> Result<[BranchPair; 2]> {
    let tol = phi.tol();
    let s = eig_unchecked(
        &phi.partial_trace(&[qubit])?.as_mat2().expect("single-qubit marginal"),
        tol.degeneracy,
    );
    if s.degenerate {
        return Err(LuError::Precondition(format!(
            "qubit {qubit} has a degenerate marginal; it has to be treated as a variable"
        )));
    }
    let mut a = psi.clone();
    a.apply_single(qubit, w_bar);
    let mut b = phi.clone();
    b.apply_single(qubit, v_bar);
    let pair = |l: usize| -> Result<BranchPair> {
        Ok(BranchPair {
            outcome: l,
            psi: conditional_state(&a, qubit, l)?,
            phi: conditional_state(&b, qubit, l)?,
        })
    };
    Ok([pair(0)?, pair(1)?])
}

#[derive(Clone, Debug)]
pub enum ChainResult {
    Chain(DependencyChain),
    NotEquivalent(Witness),
    Undetermined(String),
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for t in start..items.len() {
            cur.push(items[t]);
            rec(items, size, t + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Tuple pairs `i <= j` that agree on the conditioning qubits whose phase
/// is known (everything except variables).
fn allowed_pairs(cond: &[usize], roles: &[ChainRole]) -> Vec<(usize, usize)> {
    let s = cond.len();
    let known_mask = cond
        .iter()
        .enumerate()
        .filter(|(_, &q)| !matches!(roles[q], ChainRole::Variable(_)))
        .fold(0usize, |m, (t, _)| m | 1 << (s - 1 - t));
    let mut out = Vec::new();
    for i in 0..1usize << s {
        for j in i..1usize << s {
            if (i ^ j) & known_mask == 0 {
                out.push((i, j));
            }
        }
    }
    out
}

fn spectra_witness(check: SpectraCheck, context: &str) -> Option<ChainResult> {
    match check {
        SpectraCheck::Match => None,
        SpectraCheck::Mismatch(Verdict::NotEquivalent { witness }) => Some(ChainResult::NotEquivalent(Witness::new(
            format!("{context}: {}", witness.description),
            witness.margin,
        ))),
        SpectraCheck::Mismatch(_) => unreachable!("spectra mismatches are witnesses"),
        SpectraCheck::Borderline(reason) => Some(ChainResult::Undetermined(format!("{context}: {reason}"))),
    }
}

/// Builds the dependency chain of `phi` and pins every rotation that does
/// not depend on a variable, rejecting the pair on the way whenever a
/// spectrum that must be shared is not.
pub fn build_chain(psi: &PureState, phi: &PureState) -> Result<ChainResult> {
    let n = phi.n();
    if psi.n() != n {
        return Err(LuError::SizeMismatch { expected: n, found: psi.n() });
    }
    let tol = *phi.tol();
    let mut class = classify(phi)?;
    let sp_psi = single_qubit_spectra(psi)?;
    let sp_phi = single_qubit_spectra(phi)?;
    if let Some(r) = spectra_witness(compare_spectra(&sp_psi, &sp_phi, &tol), "marginals") {
        return Ok(r);
    }

    let mut target = psi.amplitudes().to_vec();
    let mut reference = phi.amplitudes().to_vec();
    let mut entries: Vec<ChainEntry> = Vec::new();
    let mut variables: Vec<usize> = Vec::new();

    for q in 0..n {
        if sp_phi[q].gap() <= 20.0 * tol.degeneracy {
            continue;
        }
        let (w, v) = (sp_psi[q].diagonalizer, sp_phi[q].diagonalizer);
        if n >= 2 {
            for pair in project_and_reduce(psi, phi, q, &w, &v)? {
                let dw = (pair.psi.weight - pair.phi.weight).abs();
                if dw > 10.0 * tol.degeneracy {
                    return Ok(ChainResult::NotEquivalent(Witness::new(
                        format!("branch {} of qubit {q} has weight {:.10} vs {:.10}", pair.outcome, pair.psi.weight, pair.phi.weight),
                        dw,
                    )));
                }
                if let (Some(a), Some(b)) = (&pair.psi.state, &pair.phi.state) {
                    if n >= 3 {
                        let check = compare_spectra(&single_qubit_spectra(a)?, &single_qubit_spectra(b)?, &tol);
                        if let Some(r) = spectra_witness(check, &format!("branch {} of qubit {q}", pair.outcome)) {
                            return Ok(r);
                        }
                    }
                }
            }
        }
        apply_mat2(&mut target, n, q, w.matrix());
        apply_mat2(&mut reference, n, q, v.matrix());
        class.chain[q] = ChainRole::Fixed;
        entries.push(ChainEntry {
            qubit: q,
            role: ChainRole::Fixed,
            v_bar: v,
            w_fixed: Some(w),
            flip_allowed: false,
            source: None,
            depends_on: BTreeSet::new(),
        });
    }

    let mut undetermined: Option<String> = None;
    loop {
        let pending: Vec<usize> = (0..n).filter(|&q| class.chain[q] == ChainRole::Pending).collect();
        if pending.is_empty() {
            break;
        }
        let mut progress = false;
        for &k in &pending {
            let mut known: Vec<usize> = entries.iter().map(|e| e.qubit).collect();
            known.sort_unstable();
            let mut found: Option<(CrossBlockOperator, Vec<(usize, usize)>)> = None;
            'search: for size in 1..=MAX_CONDITIONING.min(known.len()) {
                for cond in subsets(&known, size) {
                    let pairs = allowed_pairs(&cond, &class.chain);
                    for &(i, j) in &pairs {
                        let x = block_operator(&reference, n, &cond, i, j, k);
                        let op = CrossBlockOperator::from_block(cond.clone(), i, j, k, x);
                        if op.usable(&tol) {
                            found = Some((op, pairs.clone()));
                            break 'search;
                        }
                    }
                }
            }
            let Some((op, pairs)) = found else { continue };

            let depends_on: BTreeSet<usize> = op
                .conditioning
                .iter()
                .flat_map(|&c| entries.iter().find(|e| e.qubit == c).unwrap().depends_on.iter().copied())
                .collect();
            let (kind, reference_op) = op.chosen();
            let v = eig_unchecked(&reference_op, tol.degeneracy).diagonalizer;
            let mut w_fixed = None;
            let mut flip_allowed = false;
            if depends_on.is_empty() {
                // All pairs of this conditioning set double as rejection tests.
                for &(i, j) in &pairs {
                    let xr = block_operator(&reference, n, &op.conditioning, i, j, k);
                    let xt = block_operator(&target, n, &op.conditioning, i, j, k);
                    for kd in [OperatorKind::Y, OperatorKind::Z] {
                        let a = eig_unchecked(&kind_matrix(&xt, kd), tol.degeneracy);
                        let b = eig_unchecked(&kind_matrix(&xr, kd), tol.degeneracy);
                        let diff = spectral_difference(&a, &b);
                        if diff > 10.0 * tol.degeneracy {
                            return Ok(ChainResult::NotEquivalent(Witness::new(
                                format!(
                                    "conditional block operator on qubit {k} (conditioning {:?}, tuples {i}/{j}) has spectrum ({:.10}, {:.10}) vs ({:.10}, {:.10})",
                                    op.conditioning, a.lambda1, a.lambda2, b.lambda1, b.lambda2
                                ),
                                diff,
                            )));
                        }
                        if diff > tol.degeneracy && undetermined.is_none() {
                            undetermined = Some(format!(
                                "conditional block spectra on qubit {k} agree only to {diff:.2e}"
                            ));
                        }
                    }
                }
                let s = eig_unchecked(&kind_matrix(&block_operator(&target, n, &op.conditioning, op.i, op.j, k), kind), tol.degeneracy);
                flip_allowed = s.degenerate;
                w_fixed = Some(s.diagonalizer);
                apply_mat2(&mut target, n, k, s.diagonalizer.matrix());
            }
            apply_mat2(&mut reference, n, k, v.matrix());
            let role = ChainRole::Determined {
                via: op.conditioning.clone(),
            };
            class.chain[k] = role.clone();
            entries.push(ChainEntry {
                qubit: k,
                role,
                v_bar: v,
                w_fixed,
                flip_allowed,
                source: Some(Provenance {
                    conditioning: op.conditioning.clone(),
                    i: op.i,
                    j: op.j,
                    kind,
                }),
                depends_on,
            });
            progress = true;
        }
        if progress {
            continue;
        }
        // No extension exists: free the pending qubit with the most
        // non-maximally-mixed pair marginals among the pending qubits.
        let v = *pending
            .iter()
            .max_by_key(|&&v| {
                let count = pending.iter().filter(|&&j| j != v && !class.pair_mixed[v][j]).count();
                (count, std::cmp::Reverse(v))
            })
            .expect("pending is nonempty");
        let index = variables.len();
        variables.push(v);
        class.chain[v] = ChainRole::Variable(index);
        entries.push(ChainEntry {
            qubit: v,
            role: ChainRole::Variable(index),
            v_bar: Unitary2::identity(),
            w_fixed: None,
            flip_allowed: false,
            source: None,
            depends_on: BTreeSet::from([index]),
        });
    }

    if let Some(reason) = undetermined {
        return Ok(ChainResult::Undetermined(reason));
    }
    Ok(ChainResult::Chain(DependencyChain {
        n,
        entries,
        variables,
        class,
        reference: PureState::from_parts(n, reference, tol),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn real_state(n: usize, entries: &[(usize, f64)]) -> PureState {
        let mut amp = vec![ZERO; 1 << n];
        for &(i, a) in entries {
            amp[i] = C64::new(a, 0.0);
        }
        PureState::new(n, amp).unwrap()
    }

    fn ghz3() -> PureState {
        real_state(3, &[(0, FRAC_1_SQRT_2), (7, FRAC_1_SQRT_2)])
    }

    fn w3() -> PureState {
        let s = 1.0 / 3f64.sqrt();
        real_state(3, &[(1, s), (2, s), (4, s)])
    }

    #[test]
    fn bell_block_operator() {
        let bell = real_state(2, &[(0, FRAC_1_SQRT_2), (3, FRAC_1_SQRT_2)]);
        let op = cross_block_operator(&bell, &[0], 0, 0, 1).unwrap();
        assert!(op.x.max_abs_diff(&Mat2::real(0.5, 0.0, 0.0, 0.0)) < 1e-15);
        assert!(op.y.max_abs_diff(&Mat2::real(1.0, 0.0, 0.0, 0.0)) < 1e-15);
        assert!(op.usable(&ToleranceContext::default()));
    }

    #[test]
    fn zero_block_is_unusable() {
        let op = cross_block_operator(&PureState::basis(2, 0).unwrap(), &[0], 0, 1, 1).unwrap();
        assert_eq!(op.x, Mat2::zero());
        assert!(!op.usable(&ToleranceContext::default()));
    }

    #[test]
    fn ghz_block_is_projector() {
        let op = cross_block_operator(&ghz3(), &[0], 0, 0, 1).unwrap();
        let (kind, m) = op.chosen();
        assert_eq!(kind, OperatorKind::Y);
        assert!(m.max_abs_diff(&Mat2::real(1.0, 0.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn overlapping_qubits_are_rejected() {
        assert!(cross_block_operator(&ghz3(), &[1], 0, 0, 1).is_err());
        assert!(cross_block_operator(&ghz3(), &[0], 0, 2, 1).is_err());
    }

    #[test]
    fn evaluate_identity_assignment() {
        let op = cross_block_operator(&ghz3(), &[0], 0, 0, 2).unwrap();
        let out = evaluate_wk(&op, &ghz3(), &LocalUnitaryLayer::identity(3)).unwrap();
        let WkOutcome::Determined { w_bar, flip_allowed, spectral_difference } = out else { panic!() };
        assert!(!flip_allowed && spectral_difference < 1e-15);
        let v = eig_unchecked(&op.chosen().1, 1e-8).diagonalizer;
        let ratio = *w_bar.matrix() * v.matrix().adjoint();
        assert!(ratio.get(0, 1).norm() < 1e-15 && ratio.get(1, 0).norm() < 1e-15);
    }

    #[test]
    fn evaluate_ghz_against_w_blocks() {
        let op = cross_block_operator(&w3(), &[0], 0, 0, 1).unwrap();
        let out = evaluate_wk(&op, &ghz3(), &LocalUnitaryLayer::identity(3)).unwrap();
        assert!(matches!(out, WkOutcome::Mismatch(_)));
    }

    #[test]
    fn ghz_chain_has_one_variable() {
        let ChainResult::Chain(chain) = build_chain(&ghz3(), &ghz3()).unwrap() else { panic!() };
        assert_eq!(chain.variables, vec![0]);
        assert_eq!(chain.class.chain[1], ChainRole::Determined { via: vec![0] });
        assert_eq!(chain.class.chain[2], ChainRole::Determined { via: vec![0] });
    }

    #[test]
    fn crossed_bell_pairs_need_two_variables() {
        // |Phi+>_{02} (x) |Phi+>_{13}: every qubit and the pair (0, 1) are maximally mixed.
        let entries: Vec<(usize, f64)> = [0b0000, 0b0101, 0b1010, 0b1111].iter().map(|&i| (i, 0.5)).collect();
        let s = real_state(4, &entries);
        let ChainResult::Chain(chain) = build_chain(&s, &s).unwrap() else { panic!() };
        assert_eq!(chain.variables, vec![0, 1]);
    }

    #[test]
    fn generic_chain_is_all_fixed() {
        let s = real_state(2, &[(0, 0.8f64.sqrt()), (3, 0.2f64.sqrt())]);
        let ChainResult::Chain(chain) = build_chain(&s, &s).unwrap() else { panic!() };
        assert!(chain.variables.is_empty());
        assert!(chain.entries.iter().all(|e| e.role == ChainRole::Fixed));
    }

    #[test]
    fn product_with_bell_branches() {
        // |0> (x) |Phi+>
        let s = real_state(3, &[(0b000, FRAC_1_SQRT_2), (0b011, FRAC_1_SQRT_2)]);
        let id = Unitary2::identity();
        let [b0, b1] = project_and_reduce(&s, &s, 0, &id, &id).unwrap();
        assert!((b0.psi.weight - 1.0).abs() < 1e-15 && (b0.phi.weight - 1.0).abs() < 1e-15);
        let bell = real_state(2, &[(0, FRAC_1_SQRT_2), (3, FRAC_1_SQRT_2)]);
        assert!(b0.psi.state.as_ref().unwrap().max_abs_diff(&bell) < 1e-15);
        assert!(b1.psi.is_empty() && b1.phi.is_empty());
        assert!(project_and_reduce(&s, &s, 1, &id, &id).is_err());
    }
}
