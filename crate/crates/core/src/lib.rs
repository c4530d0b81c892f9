//! Local unitary equivalence of multi-qubit pure states.
//!
//! Two `n`-qubit states are LU-equivalent when a tensor product of
//! single-qubit unitaries (and a global phase) maps one onto the other. The
//! crate decides this question, producing a verifiable certificate layer for
//! equivalent pairs and an invariant witness for inequivalent ones.

pub mod cli;
pub mod eig2;
pub mod error;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod optimize;
pub mod phase_gates;
pub mod random;
pub mod solver;
pub mod standard_form;
pub mod state;
pub mod verdict;

pub use eig2::{eig_hermitian2, eig_mat2, Spectrum2};
pub use error::{LuError, Result};
pub use linalg::{Mat2, Unitary2, C64};
pub use phase_gates::{solve_phase_gates, PhaseGateVerdict, PhaseVector};
pub use solver::{decide_lu_equivalence, verify_certificate, SolverConfig};
pub use standard_form::{check_generic_equivalence, standard_form, StandardFormResult};
pub use state::{apply_layer, partial_trace, HermitianReduced, LocalUnitaryLayer, PureState, ToleranceContext};
pub use verdict::{Diagnostics, Verdict, Witness};
