//! Seeded fixtures.
//!
//! Every generator draws from `Pcg64` (PCG XSL RR 128/64, `rand_pcg`)
//! seeded with `seed_from_u64`. Normal deviates come from
//! `rand_distr::StandardNormal`; uniform deviates are `f64` in `[0, 1)`.
//!
//! * Haar state: for each amplitude in index order draw `re` then `im`,
//!   then normalize.
//! * Haar 2x2 unitary: draw the matrix entries row-major (`re` then `im`
//!   each) and orthonormalize the columns by Gram-Schmidt. This is the QR
//!   factor with a positive diagonal in `R`.
//! * Random layer: the global phase (`2 pi u`) first, then one Haar unitary
//!   per qubit in qubit order.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt, SeedableRng};
use rand_distr::StandardNormal;
use rand_pcg::Pcg64;

use crate::error::{LuError, Result};
use crate::linalg::{Mat2, Unitary2, C64, ZERO};
use crate::state::{LocalUnitaryLayer, PureState, MAX_QUBITS};

pub fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(LuError::InvalidState(format!("qubit count {n} outside 1..={MAX_QUBITS}")));
    }
    Ok(())
}

pub fn haar_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState> {
    check_n(n)?;
    let amp = (0..1usize << n).map(|_| complex_normal(rng)).collect();
    Ok(PureState::from_unnormalized(n, amp)?.0)
}

pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary2 {
    let a = complex_normal(rng);
    let b = complex_normal(rng);
    let c = complex_normal(rng);
    let d = complex_normal(rng);
    // Columns (a, c) and (b, d).
    let n1 = (a.norm_sqr() + c.norm_sqr()).sqrt();
    let (q00, q10) = (a / n1, c / n1);
    let proj = q00.conj() * b + q10.conj() * d;
    let (r0, r1) = (b - proj * q00, d - proj * q10);
    let n2 = (r0.norm_sqr() + r1.norm_sqr()).sqrt();
    let m = Mat2::new(q00, r0 / n2, q10, r1 / n2);
    Unitary2::new(m, 1e-12).expect("Gram-Schmidt output is unitary")
}

pub fn random_layer<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LocalUnitaryLayer> {
    check_n(n)?;
    let phase = rng.random::<f64>() * TAU;
    let factors = (0..n).map(|_| haar_unitary(rng)).collect();
    Ok(LocalUnitaryLayer::new(phase, factors))
}

fn from_real(n: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<PureState> {
    check_n(n)?;
    let mut amp = vec![ZERO; 1 << n];
    for (i, a) in entries {
        amp[i] = C64::new(a, 0.0);
    }
    Ok(PureState::from_unnormalized(n, amp)?.0)
}

/// `(|0..0> + |1..1>)/sqrt(2)`.
pub fn ghz(n: usize) -> Result<PureState> {
    from_real(n, [(0, 1.0), ((1usize << n) - 1, 1.0)])
}

/// Equal superposition of all weight-one bitstrings.
pub fn w_state(n: usize) -> Result<PureState> {
    from_real(n, (0..n).map(|q| (1usize << q, 1.0)))
}

/// Linear cluster state: amplitude `(-1)^{sum_k i_k i_{k+1}} / sqrt(2^n)`.
pub fn cluster(n: usize) -> Result<PureState> {
    check_n(n)?;
    from_real(
        n,
        (0..1usize << n).map(|i| {
            let links = (0..n.saturating_sub(1))
                .filter(|&k| (i >> (n - 1 - k)) & 1 == 1 && (i >> (n - 2 - k)) & 1 == 1)
                .count();
            (i, if links % 2 == 0 { 1.0 } else { -1.0 })
        }),
    )
}

/// `|0..0>`.
pub fn product(n: usize) -> Result<PureState> {
    check_n(n)?;
    PureState::basis(n, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    HaarState,
    Layer,
    Ghz,
    W,
    Cluster,
    Product,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 6] = [
        FixtureKind::HaarState,
        FixtureKind::Layer,
        FixtureKind::Ghz,
        FixtureKind::W,
        FixtureKind::Cluster,
        FixtureKind::Product,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FixtureKind::HaarState => "haar_state",
            FixtureKind::Layer => "layer",
            FixtureKind::Ghz => "ghz",
            FixtureKind::W => "w",
            FixtureKind::Cluster => "cluster",
            FixtureKind::Product => "product",
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureKind {
    type Err = LuError;

    fn from_str(s: &str) -> Result<Self> {
        FixtureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| LuError::Parse(format!("unknown fixture kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fixture {
    State(PureState),
    Layer(LocalUnitaryLayer),
}

pub fn fixture(kind: FixtureKind, n: usize, seed: u64) -> Result<Fixture> {
    let mut r = rng(seed);
    Ok(match kind {
        FixtureKind::HaarState => Fixture::State(haar_state(n, &mut r)?),
        FixtureKind::Layer => Fixture::Layer(random_layer(n, &mut r)?),
        FixtureKind::Ghz => Fixture::State(ghz(n)?),
        FixtureKind::W => Fixture::State(w_state(n)?),
        FixtureKind::Cluster => Fixture::State(cluster(n)?),
        FixtureKind::Product => Fixture::State(product(n)?),
    })
}
