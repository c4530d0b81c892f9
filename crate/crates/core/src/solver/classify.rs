use crate::error::Result;
use crate::state::PureState;

/// How a qubit's local unitary is obtained in a dependency chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainRole {
    /// Not yet placed.
    Pending,
    /// Fixed (up to a phase gate) by the qubit's own non-degenerate marginal.
    Fixed,
    /// Function of the unitaries on the conditioning qubits `via`.
    Determined { via: Vec<usize> },
    /// Free search variable with the given index.
    Variable(usize),
}

/// Which one- and two-qubit marginals are maximally mixed.
#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementClass {
    pub n: usize,
    pub single_mixed: Vec<bool>,
    /// Symmetric; the diagonal is `false`.
    pub pair_mixed: Vec<Vec<bool>>,
    /// Some marginal lies within `10 x tol.degeneracy` of the threshold.
    pub borderline: bool,
    pub chain: Vec<ChainRole>,
}

impl EntanglementClass {
    pub fn mixed_qubits(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.single_mixed[q]).collect()
    }

    /// Same flags, ignoring the chain.
    pub fn same_flags(&self, other: &EntanglementClass) -> bool {
        self.single_mixed == other.single_mixed && self.pair_mixed == other.pair_mixed
    }
}

/// Classifies a state by its maximally mixed marginals. A marginal counts as
/// proportional to the identity when its max-norm distance from
/// `tr(rho)/d * 1` is at most `tol.degeneracy`.
pub fn classify(state: &PureState) -> Result<EntanglementClass> {
    let n = state.n();
    let tol = state.tol().degeneracy;
    let mut borderline = false;
    let mut flag = |d: f64| {
        borderline |= d > tol && d <= 10.0 * tol;
        d <= tol
    };
    let mut single_mixed = Vec::with_capacity(n);
    for q in 0..n {
        single_mixed.push(flag(state.partial_trace(&[q])?.distance_from_scalar()));
    }
    let mut pair_mixed = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let mixed = flag(state.partial_trace(&[a, b])?.distance_from_scalar());
            pair_mixed[a][b] = mixed;
            pair_mixed[b][a] = mixed;
        }
    }
    Ok(EntanglementClass {
        n,
        single_mixed,
        pair_mixed,
        borderline,
        chain: vec![ChainRole::Pending; n],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{C64, ZERO};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn real_state(n: usize, entries: &[(usize, f64)]) -> PureState {
        let mut amp = vec![ZERO; 1 << n];
        for &(i, a) in entries {
            amp[i] = C64::new(a, 0.0);
        }
        PureState::new(n, amp).unwrap()
    }

    #[test]
    fn ghz_flags() {
        let c = classify(&real_state(3, &[(0, FRAC_1_SQRT_2), (7, FRAC_1_SQRT_2)])).unwrap();
        assert_eq!(c.single_mixed, vec![true; 3]);
        assert!(c.pair_mixed.iter().flatten().all(|m| !m));
        assert!(!c.borderline);
    }

    #[test]
    fn bell_pairs_on_adjacent_qubits() {
        // |Phi+>_{01} (x) |Phi+>_{23}
        let entries: Vec<(usize, f64)> = [0b0000, 0b0011, 0b1100, 0b1111].iter().map(|&i| (i, 0.5)).collect();
        let c = classify(&real_state(4, &entries)).unwrap();
        assert!(c.single_mixed[0]);
        assert!(!c.pair_mixed[0][1]);
        assert!(c.pair_mixed[0][2]);
    }

    #[test]
    fn product_has_no_mixed_qubit() {
        let c = classify(&PureState::basis(4, 0).unwrap()).unwrap();
        assert_eq!(c.mixed_qubits(), Vec::<usize>::new());
    }
}
