//! Pure states, reduced density matrices, local unitary layers and the tensor
//! primitives built on them.
//!
//! Qubits are indexed from 0. Qubit 0 is the most significant bit of a basis
//! index, so lexicographic order on bitstrings equals numeric order on
//! indices.

use nalgebra::DMatrix;

use crate::error::{LuError, Result};
use crate::linalg::{wrap_angle, Mat2, Unitary2, C64, ZERO};

pub const MAX_QUBITS: usize = 12;

/// Numerical tolerances shared by every decision in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceContext {
    pub norm: f64,
    pub hermitian: f64,
    pub unitary: f64,
    /// Eigenvalue gap (and distance-from-identity) threshold.
    pub degeneracy: f64,
    /// Phase residual mod 2pi; also used for per-amplitude agreement.
    pub phase: f64,
    /// Accept a certificate when `1 - |<psi|L|phi>|` is at most this.
    pub fidelity_accept: f64,
}

impl Default for ToleranceContext {
    fn default() -> Self {
        ToleranceContext {
            norm: 1e-10,
            hermitian: 1e-10,
            unitary: 1e-9,
            degeneracy: 1e-8,
            phase: 1e-8,
            fidelity_accept: 1e-8,
        }
    }
}

impl ToleranceContext {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("norm", self.norm),
            ("hermitian", self.hermitian),
            ("unitary", self.unitary),
            ("degeneracy", self.degeneracy),
            ("phase", self.phase),
            ("fidelity_accept", self.fidelity_accept),
        ];
        for (name, v) in all {
            if !(v > 0.0 && v.is_finite()) {
                return Err(LuError::Precondition(format!(
                    "tolerance `{name}` must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn bit(index: usize, n: usize, q: usize) -> usize {
    (index >> (n - 1 - q)) & 1
}

/// Places the bits of `bits` (most significant first) onto the listed qubit
/// positions of an `n`-qubit index.
pub(crate) fn scatter(n: usize, qubits: &[usize], bits: usize) -> usize {
    let k = qubits.len();
    qubits
        .iter()
        .enumerate()
        .map(|(t, &q)| ((bits >> (k - 1 - t)) & 1) << (n - 1 - q))
        .fold(0, |acc, b| acc | b)
}

pub(crate) fn complement(n: usize, qubits: &[usize]) -> Vec<usize> {
    (0..n).filter(|q| !qubits.contains(q)).collect()
}

pub(crate) fn check_qubits(n: usize, qubits: &[usize]) -> Result<()> {
    for (t, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(LuError::QubitOutOfRange { index: q, n });
        }
        if qubits[..t].contains(&q) {
            return Err(LuError::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// An `n`-qubit pure state, normalized within `tol.norm`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amp: Vec<C64>,
    tol: ToleranceContext,
}

impl PureState {
    pub fn new(n: usize, amp: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(n, amp, ToleranceContext::default())
    }

    pub fn with_tolerance(n: usize, amp: Vec<C64>, tol: ToleranceContext) -> Result<Self> {
        check_shape(n, amp.len())?;
        tol.validate()?;
        let norm = norm_of(&amp);
        if !((norm * norm - 1.0).abs() <= tol.norm) {
            return Err(LuError::InvalidState(format!(
                "squared norm {:.12} differs from 1 by more than {:.1e}",
                norm * norm,
                tol.norm
            )));
        }
        Ok(PureState { n, amp, tol })
    }

    /// Normalizes `amp`, returning the state and the original norm.
    pub fn from_unnormalized(n: usize, amp: Vec<C64>) -> Result<(Self, f64)> {
        check_shape(n, amp.len())?;
        let norm = norm_of(&amp);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(LuError::InvalidState(format!("cannot normalize a vector of norm {norm}")));
        }
        let amp = amp.into_iter().map(|z| z / norm).collect();
        Ok((
            PureState {
                n,
                amp,
                tol: ToleranceContext::default(),
            },
            norm,
        ))
    }

    /// Computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_shape(n, 1 << n)?;
        if index >= 1 << n {
            return Err(LuError::InvalidState(format!("basis index {index} out of range")));
        }
        let mut amp = vec![ZERO; 1 << n];
        amp[index] = 1.0.into();
        Self::new(n, amp)
    }

    /// Builds a state from amplitudes that are normalized by construction,
    /// inheriting tolerances from `like`.
    pub(crate) fn from_parts(n: usize, amp: Vec<C64>, tol: ToleranceContext) -> Self {
        debug_assert_eq!(amp.len(), 1 << n);
        PureState { n, amp, tol }
    }

    pub fn set_tolerance(&mut self, tol: ToleranceContext) -> Result<()> {
        tol.validate()?;
        self.tol = tol;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }

    #[inline]
    pub fn amplitude(&self, index: usize) -> C64 {
        self.amp[index]
    }

    #[inline]
    pub fn tol(&self) -> &ToleranceContext {
        &self.tol
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amp)
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amp
    }

    /// Applies a single-qubit matrix in place.
    pub fn apply_single(&mut self, qubit: usize, u: &Unitary2) {
        apply_mat2(&mut self.amp, self.n, qubit, u.matrix());
    }

    /// `e^{i phase}` times every amplitude.
    pub fn apply_global_phase(&mut self, phase: f64) {
        let z = C64::from_polar(1.0, phase);
        self.amp.iter_mut().for_each(|a| *a *= z);
    }

    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        self.amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Reduced density matrix of the qubits in `keep`, in the listed order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<HermitianReduced> {
        partial_trace(self, keep)
    }
}

fn check_shape(n: usize, len: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(LuError::Unsupported(format!(
            "qubit count {n} outside 1..={MAX_QUBITS}"
        )));
    }
    if len != 1 << n {
        return Err(LuError::SizeMismatch {
            expected: 1 << n,
            found: len,
        });
    }
    Ok(())
}

pub(crate) fn norm_of(amp: &[C64]) -> f64 {
    amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// In-place action of `m` on `qubit` of an `n`-qubit amplitude vector.
pub(crate) fn apply_mat2(amp: &mut [C64], n: usize, qubit: usize, m: &Mat2) {
    let stride = 1usize << (n - 1 - qubit);
    let [[a, b], [c, d]] = m.0;
    let dim = amp.len();
    let mut base = 0;
    while base < dim {
        for i0 in base..base + stride {
            let i1 = i0 + stride;
            let x0 = amp[i0];
            let x1 = amp[i1];
            amp[i0] = a * x0 + b * x1;
            amp[i1] = c * x0 + d * x1;
        }
        base += 2 * stride;
    }
}

/// Reduced state on an ordered list of qubits, as a dense Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianReduced {
    qubits: Vec<usize>,
    dim: usize,
    data: Vec<C64>,
}

impl HermitianReduced {
    /// Checked constructor; `data` is row-major `dim x dim`.
    pub fn new(qubits: Vec<usize>, data: Vec<C64>, tol: &ToleranceContext) -> Result<Self> {
        let dim = 1usize << qubits.len();
        if data.len() != dim * dim {
            return Err(LuError::SizeMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        let m = HermitianReduced { qubits, dim, data };
        let dev = m.hermitian_deviation();
        if !(dev <= tol.hermitian) {
            return Err(LuError::NotHermitian(dev));
        }
        Ok(m)
    }

    /// A full-system density matrix (`2^n x 2^n`).
    pub fn full_system(n: usize, data: Vec<C64>, tol: &ToleranceContext) -> Result<Self> {
        Self::new((0..n).collect(), data, tol)
    }

    pub fn from_mat2(qubit: usize, m: &Mat2, tol: &ToleranceContext) -> Result<Self> {
        Self::new(vec![qubit], m.0.iter().flatten().copied().collect(), tol)
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.dim + c]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                dev = dev.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        dev
    }

    /// `|| rho - (tr rho / d) 1 ||_max`.
    pub fn distance_from_scalar(&self) -> f64 {
        let t = self.trace() / self.dim as f64;
        let mut dist: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let target = if r == c { t } else { ZERO };
                dist = dist.max((self.get(r, c) - target).norm());
            }
        }
        dist
    }

    pub fn as_mat2(&self) -> Option<Mat2> {
        (self.dim == 2).then(|| Mat2::new(self.get(0, 0), self.get(0, 1), self.get(1, 0), self.get(1, 1)))
    }

    pub fn to_dmatrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.to_dmatrix().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// Eigenpairs in descending eigenvalue order; columns are eigenvectors.
    pub fn eigen(&self) -> (Vec<f64>, Vec<Vec<C64>>) {
        let eig = self.to_dmatrix().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        (values, vectors)
    }
}

/// Reduced density matrix by direct summation over the discarded qubits.
pub fn partial_trace(state: &PureState, keep: &[usize]) -> Result<HermitianReduced> {
    let n = state.n;
    if keep.is_empty() {
        return Err(LuError::Precondition("partial trace needs at least one kept qubit".into()));
    }
    check_qubits(n, keep)?;
    let k = keep.len();
    let dk = 1usize << k;
    let rest = complement(n, keep);
    let kept_idx: Vec<usize> = (0..dk).map(|a| scatter(n, keep, a)).collect();
    let mut data = vec![ZERO; dk * dk];
    let mut column = vec![ZERO; dk];
    for e in 0..1usize << rest.len() {
        let env = scatter(n, &rest, e);
        for a in 0..dk {
            column[a] = state.amp[env | kept_idx[a]];
        }
        for r in 0..dk {
            if column[r] == ZERO {
                continue;
            }
            for c in r..dk {
                data[r * dk + c] += column[r] * column[c].conj();
            }
        }
    }
    for r in 0..dk {
        data[r * dk + r].im = 0.0;
        for c in 0..r {
            data[r * dk + c] = data[c * dk + r].conj();
        }
    }
    Ok(HermitianReduced {
        qubits: keep.to_vec(),
        dim: dk,
        data,
    })
}

/// `tr_{not k}(|S_i><S_j|)` where `S_i = <i|_C psi` for a tuple `i` over the
/// conditioning qubits `cond`.
pub(crate) fn block_operator(
    amp: &[C64],
    n: usize,
    cond: &[usize],
    i_bits: usize,
    j_bits: usize,
    k: usize,
) -> Mat2 {
    let mut fixed = cond.to_vec();
    fixed.push(k);
    let rest = complement(n, &fixed);
    let ci = scatter(n, cond, i_bits);
    let cj = scatter(n, cond, j_bits);
    let kb = 1usize << (n - 1 - k);
    let mut x = Mat2::zero();
    for e in 0..1usize << rest.len() {
        let env = scatter(n, &rest, e);
        let si = [amp[env | ci], amp[env | ci | kb]];
        let sj = [amp[env | cj], amp[env | cj | kb]];
        for a in 0..2 {
            for b in 0..2 {
                x.0[a][b] += si[a] * sj[b].conj();
            }
        }
    }
    x
}

/// Global phase plus one single-qubit unitary per qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitaryLayer {
    global_phase: f64,
    factors: Vec<Unitary2>,
}

impl LocalUnitaryLayer {
    pub fn new(global_phase: f64, factors: Vec<Unitary2>) -> Self {
        LocalUnitaryLayer {
            global_phase: wrap_angle(global_phase),
            factors,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(0.0, vec![Unitary2::identity(); n])
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn factors(&self) -> &[Unitary2] {
        &self.factors
    }

    pub fn factor(&self, q: usize) -> &Unitary2 {
        &self.factors[q]
    }

    /// `self` after `first`: applying the result equals applying `first`
    /// then `self`.
    pub fn compose(&self, first: &LocalUnitaryLayer) -> Result<Self> {
        if self.n() != first.n() {
            return Err(LuError::SizeMismatch {
                expected: self.n(),
                found: first.n(),
            });
        }
        let factors = self
            .factors
            .iter()
            .zip(&first.factors)
            .map(|(a, b)| *a * *b)
            .collect();
        Ok(Self::new(self.global_phase + first.global_phase, factors))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(-self.global_phase, self.factors.iter().map(|u| u.adjoint()).collect())
    }

    /// Largest deviation of any factor from unitarity.
    pub fn unitary_deviation(&self) -> f64 {
        self.factors
            .iter()
            .map(|u| u.matrix().unitary_deviation())
            .fold(0.0, f64::max)
    }
}

/// `e^{i a0} (U_1 x ... x U_n) |state>`.
pub fn apply_layer(layer: &LocalUnitaryLayer, state: &PureState) -> Result<PureState> {
    if layer.n() != state.n {
        return Err(LuError::SizeMismatch {
            expected: state.n,
            found: layer.n(),
        });
    }
    let mut out = state.clone();
    for (q, u) in layer.factors.iter().enumerate() {
        if *u != Unitary2::identity() {
            out.apply_single(q, u);
        }
    }
    if layer.global_phase != 0.0 {
        out.apply_global_phase(layer.global_phase);
    }
    Ok(out)
}

/// `<a|b>`.
pub fn overlap(a: &PureState, b: &PureState) -> Result<C64> {
    if a.n != b.n {
        return Err(LuError::SizeMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(a.amp.iter().zip(&b.amp).map(|(x, y)| x.conj() * y).sum())
}

/// One outcome of projecting a qubit onto the computational basis.
#[derive(Clone, Debug)]
pub struct Branch {
    /// Normalized post-measurement state on the other qubits; `None` when the
    /// branch weight is below `tol.norm`.
    pub state: Option<PureState>,
    pub weight: f64,
}

impl Branch {
    pub fn is_empty(&self) -> bool {
        self.state.is_none()
    }
}

/// `<l|_qubit psi`, normalized, with its squared norm.
pub fn conditional_state(state: &PureState, qubit: usize, outcome: usize) -> Result<Branch> {
    let n = state.n;
    if n < 2 {
        return Err(LuError::Precondition("conditioning needs at least two qubits".into()));
    }
    check_qubits(n, &[qubit])?;
    if outcome > 1 {
        return Err(LuError::Precondition(format!("outcome must be 0 or 1, got {outcome}")));
    }
    let rest = complement(n, &[qubit]);
    let fixed = outcome << (n - 1 - qubit);
    let amp: Vec<C64> = (0..1usize << (n - 1))
        .map(|e| state.amp[fixed | scatter(n, &rest, e)])
        .collect();
    let weight: f64 = amp.iter().map(|z| z.norm_sqr()).sum();
    if weight <= state.tol.norm {
        return Ok(Branch { state: None, weight: 0.0 });
    }
    let s = weight.sqrt();
    let amp = amp.into_iter().map(|z| z / s).collect();
    Ok(Branch {
        state: Some(PureState::from_parts(n - 1, amp, state.tol)),
        weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> PureState {
        PureState::new(2, vec![c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)]).unwrap()
    }

    fn w3() -> PureState {
        let s = 1.0 / 3f64.sqrt();
        let mut amp = vec![ZERO; 8];
        amp[0b100] = c(s);
        amp[0b010] = c(s);
        amp[0b001] = c(s);
        PureState::new(3, amp).unwrap()
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(PureState::new(2, vec![c(1.0); 3]), Err(LuError::SizeMismatch { .. })));
        assert!(PureState::new(0, vec![c(1.0)]).is_err());
        assert!(PureState::new(13, vec![]).is_err());
        assert!(PureState::new(1, vec![c(1.0), c(1.0)]).is_err());
    }

    #[test]
    fn loader_normalizes_and_reports_norm() {
        let (s, norm) = PureState::from_unnormalized(1, vec![c(3.0), c(4.0)]).unwrap();
        assert!((norm - 5.0).abs() < 1e-15);
        assert!((s.amplitude(0).re - 0.6).abs() < 1e-15);
        assert!(PureState::from_unnormalized(1, vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let rho = bell().partial_trace(&[0]).unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn product_marginal_is_pure() {
        // |0> (x) |+>
        let h = FRAC_1_SQRT_2;
        let s = PureState::new(2, vec![c(h), c(h), ZERO, ZERO]).unwrap();
        let rho = s.partial_trace(&[0]).unwrap();
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-15);
        assert!(rho.get(1, 1).norm() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn w_marginal_matches_brute_force_blocks() {
        // Oracle: rho_1[a][b] = sum_{i2,i3} <a i2 i3|W><W|b i2 i3>.
        let w = w3();
        let mut oracle = [[ZERO; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for env in 0..4 {
                    oracle[a][b] += w.amplitude((a << 2) | env) * w.amplitude((b << 2) | env).conj();
                }
            }
        }
        let rho = w.partial_trace(&[0]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!((rho.get(a, b) - oracle[a][b]).norm() < 1e-15);
            }
        }
        assert!((rho.get(0, 0).re - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_indices() {
        let s = w3();
        assert!(matches!(s.partial_trace(&[3]), Err(LuError::QubitOutOfRange { .. })));
        assert!(matches!(s.partial_trace(&[1, 1]), Err(LuError::DuplicateQubit(1))));
        assert!(s.partial_trace(&[]).is_err());
    }

    #[test]
    fn partial_trace_respects_listed_order() {
        // |01>: keeping (1, 0) gives |10><10| in the reduced index.
        let s = PureState::basis(2, 0b01).unwrap();
        let rho = s.partial_trace(&[1, 0]).unwrap();
        assert!((rho.get(0b10, 0b10).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn layer_actions() {
        let s = PureState::basis(2, 0).unwrap();
        assert_eq!(apply_layer(&LocalUnitaryLayer::identity(2), &s).unwrap(), s);

        let x1 = LocalUnitaryLayer::new(0.0, vec![Unitary2::pauli_x(), Unitary2::identity()]);
        let out = apply_layer(&x1, &s).unwrap();
        assert!((out.amplitude(0b10) - c(1.0)).norm() < 1e-15);

        let hh = LocalUnitaryLayer::new(0.0, vec![Unitary2::hadamard(); 2]);
        let out = apply_layer(&hh, &s).unwrap();
        for a in out.amplitudes() {
            assert!((a - c(0.5)).norm() < 1e-15);
        }

        let bad = LocalUnitaryLayer::identity(3);
        assert!(apply_layer(&bad, &s).is_err());
    }

    #[test]
    fn overlaps() {
        let ghz = PureState::new(
            3,
            (0..8)
                .map(|i| if i == 0 || i == 7 { c(FRAC_1_SQRT_2) } else { ZERO })
                .collect(),
        )
        .unwrap();
        assert!((overlap(&ghz, &ghz).unwrap() - c(1.0)).norm() < 1e-15);
        let zero = PureState::basis(3, 0).unwrap();
        assert!((overlap(&ghz, &zero).unwrap() - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        let a = PureState::basis(2, 0).unwrap();
        let b = PureState::basis(2, 3).unwrap();
        assert_eq!(overlap(&a, &b).unwrap(), ZERO);
        assert!(overlap(&a, &ghz).is_err());
    }

    #[test]
    fn conditional_states() {
        let ghz = PureState::new(
            3,
            (0..8)
                .map(|i| if i == 0 || i == 7 { c(FRAC_1_SQRT_2) } else { ZERO })
                .collect(),
        )
        .unwrap();
        let b0 = conditional_state(&ghz, 0, 0).unwrap();
        assert!((b0.weight - 0.5).abs() < 1e-15);
        assert!((b0.state.unwrap().amplitude(0) - c(1.0)).norm() < 1e-15);

        // |0> (x) Phi+: outcome 1 on qubit 0 is empty.
        let mut amp = vec![ZERO; 8];
        amp[0b000] = c(FRAC_1_SQRT_2);
        amp[0b011] = c(FRAC_1_SQRT_2);
        let s = PureState::new(3, amp).unwrap();
        let b1 = conditional_state(&s, 0, 1).unwrap();
        assert!(b1.is_empty());
        assert_eq!(b1.weight, 0.0);

        // W, qubit 0, outcome 0: (|01> + |10>)/sqrt2 with weight 2/3.
        let b = conditional_state(&w3(), 0, 0).unwrap();
        assert!((b.weight - 2.0 / 3.0).abs() < 1e-15);
        let st = b.state.unwrap();
        assert!((st.amplitude(0b01) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((st.amplitude(0b10) - c(FRAC_1_SQRT_2)).norm() < 1e-15);

        assert!(conditional_state(&PureState::basis(1, 0).unwrap(), 0, 0).is_err());
    }

    #[test]
    fn block_operator_of_bell_state() {
        // Conditioning on qubit 0, tuple 0 with itself: X = diag(1/2, 0).
        let b = bell();
        let x = block_operator(b.amplitudes(), 2, &[0], 0, 0, 1);
        assert!((x.get(0, 0) - c(0.5)).norm() < 1e-15);
        assert!(x.get(1, 1).norm() < 1e-15);
        assert!(x.get(0, 1).norm() < 1e-15);
    }
}
