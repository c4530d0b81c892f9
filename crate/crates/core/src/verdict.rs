use crate::state::LocalUnitaryLayer;

/// Evidence that two states are not LU-equivalent.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub description: String,
    /// How far the violated invariant is from agreement.
    pub margin: f64,
}

impl Witness {
    pub fn new(description: impl Into<String>, margin: f64) -> Self {
        Witness {
            description: description.into(),
            margin,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub reason: String,
    pub variables: usize,
    pub restarts: usize,
    pub evaluations: usize,
    pub best_residual: Option<f64>,
}

impl Diagnostics {
    pub fn reason(reason: impl Into<String>) -> Self {
        Diagnostics {
            reason: reason.into(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `certificate` maps the second state onto the first;
    /// `residual = 1 - |<psi| L |phi>|`.
    Equivalent {
        certificate: LocalUnitaryLayer,
        residual: f64,
    },
    NotEquivalent {
        witness: Witness,
    },
    Undetermined {
        diagnostics: Diagnostics,
    },
}

impl Verdict {
    pub fn undetermined(reason: impl Into<String>) -> Self {
        Verdict::Undetermined {
            diagnostics: Diagnostics::reason(reason),
        }
    }

    pub fn not_equivalent(description: impl Into<String>, margin: f64) -> Self {
        Verdict::NotEquivalent {
            witness: Witness::new(description, margin),
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, Verdict::NotEquivalent { .. })
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, Verdict::Undetermined { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equivalent { .. } => "equivalent",
            Verdict::NotEquivalent { .. } => "not_equivalent",
            Verdict::Undetermined { .. } => "undetermined",
        }
    }

    pub fn certificate(&self) -> Option<&LocalUnitaryLayer> {
        match self {
            Verdict::Equivalent { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NotEquivalent { witness } => Some(witness),
            _ => None,
        }
    }

    /// CLI exit code: 0 equivalent, 1 not equivalent, 2 undetermined.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Equivalent { .. } => 0,
            Verdict::NotEquivalent { .. } => 1,
            Verdict::Undetermined { .. } => 2,
        }
    }
}
