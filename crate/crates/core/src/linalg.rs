//! Dense 2x2 complex matrices and the single-qubit unitaries built on them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{LuError, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major 2x2 complex matrix.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[r][c]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn conj(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].conj(), m[0][1].conj(), m[1][0].conj(), m[1][1].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Max-entry deviation from being Hermitian.
    pub fn hermitian_deviation(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// Max-entry deviation of `self * self^dagger` from the identity.
    pub fn unitary_deviation(&self) -> f64 {
        (*self * self.adjoint() - Mat2::identity()).max_abs()
    }

    /// Half the eigenvalue gap of a Hermitian matrix: the spectral distance
    /// from the nearest multiple of the identity.
    pub fn scalar_distance(&self) -> f64 {
        let half = 0.5 * (self.0[0][0].re - self.0[1][1].re);
        let b = 0.5 * (self.0[0][1] + self.0[1][0].conj());
        half.hypot(b.norm())
    }

    /// `self - (tr/2) * 1`, max-entry norm.
    pub fn max_distance_from_scalar(&self) -> f64 {
        let t = self.trace() * 0.5;
        (*self - Mat2::identity().scale(t)).max_abs()
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2::new(a[0][0] - b[0][0], a[0][1] - b[0][1], a[1][0] - b[1][0], a[1][1] - b[1][1])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{:.6}, {:.6}], [{:.6}, {:.6}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// A 2x2 unitary acting on one qubit.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    /// Checked constructor: `m * m^dagger = 1` within `tol`.
    pub fn new(m: Mat2, tol: f64) -> Result<Self> {
        let dev = m.unitary_deviation();
        if !(dev <= tol) {
            return Err(LuError::NotUnitary(dev));
        }
        Ok(Unitary2(m))
    }

    /// Wraps a matrix the caller knows to be unitary by construction.
    pub(crate) fn from_unchecked(m: Mat2) -> Self {
        Unitary2(m)
    }

    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn pauli_x() -> Self {
        Unitary2(Mat2::real(0.0, 1.0, 1.0, 0.0))
    }

    pub fn pauli_z() -> Self {
        Unitary2(Mat2::real(1.0, 0.0, 0.0, -1.0))
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Unitary2(Mat2::real(s, s, s, -s))
    }

    /// `diag(1, e^{i alpha})`.
    pub fn phase_gate(alpha: f64) -> Self {
        Unitary2(Mat2::diag(ONE, C64::from_polar(1.0, alpha)))
    }

    /// `e^{-i theta Z}`.
    pub fn rz(theta: f64) -> Self {
        Unitary2(Mat2::diag(C64::from_polar(1.0, -theta), C64::from_polar(1.0, theta)))
    }

    /// `e^{-i theta X}`.
    pub fn rx(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let c = C64::new(c, 0.0);
        let s = C64::new(0.0, -s);
        Unitary2(Mat2::new(c, s, s, c))
    }

    /// `X^k`, `k` in {0, 1}.
    pub fn flip(k: bool) -> Self {
        if k {
            Self::pauli_x()
        } else {
            Self::identity()
        }
    }

    #[inline]
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Unitary2(self.0.adjoint())
    }

    pub fn conj(&self) -> Self {
        Unitary2(self.0.conj())
    }

    pub fn transpose(&self) -> Self {
        Unitary2(self.0.transpose())
    }

    pub fn then(&self, next: &Unitary2) -> Self {
        Unitary2(next.0 * self.0)
    }

    /// `U H U^dagger`.
    pub fn conjugate(&self, h: &Mat2) -> Mat2 {
        self.0 * *h * self.0.adjoint()
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2(self.0 * rhs.0)
    }
}

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let w = a.rem_euclid(tau);
    if w >= tau {
        0.0
    } else {
        w
    }
}

/// Distance of an angle from the nearest multiple of `2pi`.
pub fn angle_residual(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let w = a.rem_euclid(tau);
    w.min(tau - w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gates_are_unitary() {
        for u in [
            Unitary2::pauli_x(),
            Unitary2::pauli_z(),
            Unitary2::hadamard(),
            Unitary2::phase_gate(0.3),
            Unitary2::rz(1.1),
            Unitary2::rx(-0.7),
        ] {
            assert!(u.matrix().unitary_deviation() < 1e-15);
        }
    }

    #[test]
    fn checked_constructor_rejects_non_unitary() {
        assert!(Unitary2::new(Mat2::real(1.0, 1.0, 0.0, 1.0), 1e-9).is_err());
        assert!(Unitary2::new(Mat2::real(0.0, 1.0, 1.0, 0.0), 1e-9).is_ok());
    }

    #[test]
    fn scalar_distance_is_half_gap() {
        let x = Mat2::real(0.0, 1.0, 1.0, 0.0);
        assert!((x.scalar_distance() - 1.0).abs() < 1e-15);
        let h = Mat2::real(0.7, 0.0, 0.0, 0.3);
        assert!((h.scalar_distance() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn angle_helpers() {
        assert!(wrap_angle(-0.5) > 5.0);
        assert!(angle_residual(std::f64::consts::TAU - 1e-12) < 1e-11);
        assert!((angle_residual(std::f64::consts::PI) - std::f64::consts::PI).abs() < 1e-15);
    }
}
