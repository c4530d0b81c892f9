//! Closed-form eigendecomposition of 2x2 Hermitian matrices.
//!
//! Eigenvectors follow one fixed phase convention: the component of largest
//! modulus is real and positive, and when both components have the same
//! modulus (within `1e-12`) the first one is. The diagonalizer `W` satisfies
//! `W H W^dagger = diag(lambda1, lambda2)` with `lambda1 >= lambda2`, so row
//! `r` of `W` is the conjugated eigenvector for the `r`-th eigenvalue.

use crate::error::{LuError, Result};
use crate::linalg::{Mat2, Unitary2, C64, ZERO};
use crate::state::{HermitianReduced, ToleranceContext};

const EQUAL_MODULUS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum2 {
    pub lambda1: f64,
    pub lambda2: f64,
    pub diagonalizer: Unitary2,
    pub degenerate: bool,
}

impl Spectrum2 {
    pub fn gap(&self) -> f64 {
        self.lambda1 - self.lambda2
    }
}

pub fn eig_hermitian2(h: &HermitianReduced, tol: &ToleranceContext) -> Result<Spectrum2> {
    let m = h.as_mat2().ok_or_else(|| LuError::SizeMismatch {
        expected: 2,
        found: h.dim(),
    })?;
    eig_mat2(&m, tol)
}

/// Eigendecomposition of a Hermitian `Mat2`.
pub fn eig_mat2(h: &Mat2, tol: &ToleranceContext) -> Result<Spectrum2> {
    let scale = 1.0 + h.max_abs();
    let dev = h
        .hermitian_deviation()
        .max(h.get(0, 0).im.abs())
        .max(h.get(1, 1).im.abs());
    if !(dev <= tol.hermitian * scale) {
        return Err(LuError::NotHermitian(dev));
    }
    Ok(eig_unchecked(h, tol.degeneracy))
}

pub(crate) fn eig_unchecked(h: &Mat2, degeneracy: f64) -> Spectrum2 {
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    let b = 0.5 * (h.get(0, 1) + h.get(1, 0).conj());
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = half.hypot(b.norm());
    let (lambda1, lambda2) = if b == ZERO {
        (a.max(d), a.min(d))
    } else {
        (mean + r, mean - r)
    };

    let diagonalizer = if b == ZERO {
        if a >= d {
            Unitary2::identity()
        } else {
            Unitary2::pauli_x()
        }
    } else {
        // Pick the eigenvector formula without cancellation.
        let v = if half >= 0.0 {
            [C64::new(r + half, 0.0), b.conj()]
        } else {
            [b, C64::new(r - half, 0.0)]
        };
        let v1 = fix_phase(v);
        let v2 = fix_phase([-v1[1].conj(), v1[0].conj()]);
        Unitary2::from_unchecked(Mat2::new(v1[0].conj(), v1[1].conj(), v2[0].conj(), v2[1].conj()))
    };
    Spectrum2 {
        lambda1,
        lambda2,
        diagonalizer,
        degenerate: lambda1 - lambda2 <= degeneracy,
    }
}

fn fix_phase(v: [C64; 2]) -> [C64; 2] {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let (m0, m1) = (v[0].norm(), v[1].norm());
    let reference = if (m0 - m1).abs() <= EQUAL_MODULUS * norm || m0 > m1 {
        v[0]
    } else {
        v[1]
    };
    let rot = reference.conj() / (reference.norm() * norm);
    [v[0] * rot, v[1] * rot]
}
