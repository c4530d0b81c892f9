//! Exact integer row reduction and the mod-2pi linear congruences that phase
//! fitting reduces to.
//!
//! A phase layer `e^{i a0} diag(1, e^{i a_k})^{(x) n}` multiplies the
//! amplitude at bitstring `i` by `e^{i (a0 + sum_k a_k i_k)}`. Fitting phases
//! therefore means solving `R a = phi (mod 2pi)` for an integer matrix `R`
//! whose rows are `(1, i_1, .., i_n)`. Real solutions of a selected subset of
//! rows are only unique modulo the lattice `2pi R^{-1} Z^r`, so every coset
//! representative is enumerated through a Smith-style diagonalization.

use std::f64::consts::TAU;

/// Fraction-free echelon basis used to test rational linear independence.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Inserts `v` if it is independent of the stored rows.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p] != 0 {
                let (rp, wp) = (row[p], w[p]);
                for (wc, rc) in w.iter_mut().zip(row) {
                    *wc = *wc * rp - *rc * wp;
                }
                normalize(&mut w);
            }
        }
        match w.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push(w);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(w: &mut [i128]) {
    let g = w.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        w.iter_mut().for_each(|x| *x /= g);
    }
}

/// `U A V = D` for a nonsingular square integer matrix, with `U`, `V`
/// unimodular and `D` diagonal.
struct Diagonalized {
    u: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    d: Vec<i128>,
}

fn diagonalize(a: &[Vec<i64>]) -> Option<Diagonalized> {
    let r = a.len();
    let mut m: Vec<Vec<i128>> = a.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let eye = |k: usize| -> Vec<Vec<i128>> {
        (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect()
    };
    let mut u = eye(r);
    let mut v = eye(r);
    for t in 0..r {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..r {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = best?;
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..r {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in 0..r {
                        m[i][j] -= q * m[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..r {
                let q = m[t][j] / p;
                if q != 0 {
                    for i in 0..r {
                        m[i][j] -= q * m[i][t];
                        v[i][j] -= q * v[i][t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                break;
            }
        }
    }
    let d = (0..r).map(|t| m[t][t]).collect();
    Some(Diagonalized { u, v, d })
}

/// All solutions of a square congruence system, one per coset.
#[derive(Clone, Debug)]
pub struct Congruence {
    /// Column indices (into the original rows) that carry the unknowns;
    /// every other column is pinned to zero.
    pub pivots: Vec<usize>,
    pub ncols: usize,
    /// Full-length solution vectors (zeros at non-pivot columns).
    pub candidates: Vec<Vec<f64>>,
}

/// Upper bound on enumerated coset representatives.
const MAX_CANDIDATES: usize = 4096;

/// Solves `rows . a = rhs (mod 2pi)` for linearly independent integer rows.
///
/// Non-pivot columns are pinned to zero. Returns `None` if the rows are
/// dependent.
pub fn solve_congruence(rows: &[Vec<i64>], rhs: &[f64]) -> Option<Congruence> {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, Vec::len);
    let mut space = RowSpace::new();
    for row in rows {
        if !space.insert(row) {
            return None;
        }
    }
    let pivots = space.pivots().to_vec();
    let r = pivots.len();
    if r == 0 {
        return Some(Congruence {
            pivots,
            ncols,
            candidates: vec![vec![0.0; ncols]],
        });
    }
    let square: Vec<Vec<i64>> = rows.iter().map(|row| pivots.iter().map(|&p| row[p]).collect()).collect();
    let Diagonalized { u, v, d } = diagonalize(&square)?;
    let urhs: Vec<f64> = u
        .iter()
        .map(|urow| {
            let s: f64 = urow.iter().zip(rhs).map(|(&c, &x)| c as f64 * x).sum();
            s.rem_euclid(TAU)
        })
        .collect();

    let sizes: Vec<usize> = d.iter().map(|x| x.unsigned_abs() as usize).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    let count = total.min(MAX_CANDIDATES);
    let mut candidates = Vec::with_capacity(count);
    let mut shifts = vec![0usize; r];
    for _ in 0..count {
        let beta: Vec<f64> = (0..r)
            .map(|j| (urhs[j] + TAU * shifts[j] as f64) / d[j] as f64)
            .collect();
        let mut full = vec![0.0; ncols];
        for (row_pos, &p) in pivots.iter().enumerate() {
            let a: f64 = v[row_pos].iter().zip(&beta).map(|(&c, &b)| c as f64 * b).sum();
            full[p] = a.rem_euclid(TAU);
        }
        candidates.push(full);
        // Odometer over the coset shifts.
        for j in 0..r {
            shifts[j] += 1;
            if shifts[j] < sizes[j] {
                break;
            }
            shifts[j] = 0;
        }
    }
    Some(Congruence {
        pivots,
        ncols,
        candidates,
    })
}
