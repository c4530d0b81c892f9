//! JSON formats for states, layers and certificates.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LuError, Result};
use crate::linalg::{Mat2, Unitary2, C64};
use crate::state::{LocalUnitaryLayer, PureState, ToleranceContext, MAX_QUBITS};
use crate::verdict::Verdict;

/// `{"n": int, "amplitudes": [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

pub type MatrixJson = [[[f64; 2]; 2]; 2];

/// `{"n": int, "global_phase": float, "unitaries": [[[re, im] x 2] x 2] x n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerFile {
    pub n: usize,
    pub global_phase: f64,
    pub unitaries: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variables: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

/// Solver output. Only equivalent verdicts carry unitaries; `residual` is
/// `null` for inequivalent pairs and the best search residual (if any) for
/// undetermined ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub verdict: String,
    pub global_phase: f64,
    pub unitaries: Vec<MatrixJson>,
    pub residual: Option<f64>,
    pub witness: Option<String>,
    pub diagnostics: DiagnosticsJson,
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
        LuError::Parse(format!(
            "{origin}: line {}, column {}: {e}{}",
            e.line(),
            e.column(),
            if line.is_empty() { String::new() } else { format!("\n  | {line}") }
        ))
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| LuError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn state_to_file(state: &PureState) -> StateFile {
    StateFile {
        n: state.n(),
        amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    }
}

/// Normalizes the amplitudes; returns the state and the original norm.
pub fn state_from_file(file: &StateFile, tol: ToleranceContext) -> Result<(PureState, f64)> {
    if file.n == 0 || file.n > MAX_QUBITS || file.amplitudes.len() != 1usize << file.n {
        return Err(LuError::InvalidState(format!(
            "n = {} needs 2^n amplitudes, found {}",
            file.n,
            file.amplitudes.len()
        )));
    }
    let amp = file.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
    let (mut s, norm) = PureState::from_unnormalized(file.n, amp)?;
    s.set_tolerance(tol)?;
    Ok((s, norm))
}

pub fn parse_state(text: &str, origin: &str, tol: ToleranceContext) -> Result<(PureState, f64)> {
    state_from_file(&parse(text, origin)?, tol)
}

pub fn read_state(path: &Path, tol: ToleranceContext) -> Result<(PureState, f64)> {
    parse_state(&read(path)?, &path.display().to_string(), tol)
}

fn matrix_to_json(u: &Unitary2) -> MatrixJson {
    let m = u.matrix();
    let e = |r: usize, c: usize| [m.get(r, c).re, m.get(r, c).im];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn matrix_from_json(m: &MatrixJson, tol: f64) -> Result<Unitary2> {
    let c = |r: usize, k: usize| C64::new(m[r][k][0], m[r][k][1]);
    Unitary2::new(Mat2::new(c(0, 0), c(0, 1), c(1, 0), c(1, 1)), tol)
}

pub fn layer_to_file(layer: &LocalUnitaryLayer) -> LayerFile {
    LayerFile {
        n: layer.n(),
        global_phase: layer.global_phase(),
        unitaries: layer.factors().iter().map(matrix_to_json).collect(),
    }
}

fn layer_from_parts(global_phase: f64, unitaries: &[MatrixJson], tol: f64) -> Result<LocalUnitaryLayer> {
    let factors = unitaries
        .iter()
        .map(|m| matrix_from_json(m, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalUnitaryLayer::new(global_phase, factors))
}

pub fn layer_from_file(file: &LayerFile, tol: f64) -> Result<LocalUnitaryLayer> {
    if file.unitaries.len() != file.n {
        return Err(LuError::SizeMismatch {
            expected: file.n,
            found: file.unitaries.len(),
        });
    }
    layer_from_parts(file.global_phase, &file.unitaries, tol)
}

pub fn parse_layer(text: &str, origin: &str, tol: f64) -> Result<LocalUnitaryLayer> {
    layer_from_file(&parse(text, origin)?, tol)
}

pub fn certificate_to_file(verdict: &Verdict, seed: Option<u64>) -> CertificateFile {
    let mut diagnostics = DiagnosticsJson {
        reason: None,
        margin: None,
        variables: None,
        restarts: None,
        evaluations: None,
        best_residual: None,
        seed,
    };
    match verdict {
        Verdict::Equivalent { certificate, residual } => CertificateFile {
            verdict: verdict.label().into(),
            global_phase: certificate.global_phase(),
            unitaries: certificate.factors().iter().map(matrix_to_json).collect(),
            residual: Some(*residual),
            witness: None,
            diagnostics,
        },
        Verdict::NotEquivalent { witness } => {
            diagnostics.margin = Some(witness.margin);
            CertificateFile {
                verdict: verdict.label().into(),
                global_phase: 0.0,
                unitaries: Vec::new(),
                residual: None,
                witness: Some(witness.description.clone()),
                diagnostics,
            }
        }
        Verdict::Undetermined { diagnostics: d } => {
            diagnostics.reason = Some(d.reason.clone());
            diagnostics.variables = Some(d.variables);
            diagnostics.restarts = Some(d.restarts);
            diagnostics.evaluations = Some(d.evaluations);
            diagnostics.best_residual = d.best_residual;
            CertificateFile {
                verdict: verdict.label().into(),
                global_phase: 0.0,
                unitaries: Vec::new(),
                residual: d.best_residual,
                witness: None,
                diagnostics,
            }
        }
    }
}

/// The layer stored in a certificate; fails for certificates without one.
pub fn certificate_layer(file: &CertificateFile, tol: f64) -> Result<LocalUnitaryLayer> {
    if file.unitaries.is_empty() {
        return Err(LuError::Parse(format!(
            "certificate with verdict '{}' carries no unitaries",
            file.verdict
        )));
    }
    layer_from_parts(file.global_phase, &file.unitaries, tol)
}

pub fn parse_certificate(text: &str, origin: &str) -> Result<CertificateFile> {
    let file: CertificateFile = parse(text, origin)?;
    if !["equivalent", "not_equivalent", "undetermined"].contains(&file.verdict.as_str()) {
        return Err(LuError::Parse(format!("{origin}: unknown verdict '{}'", file.verdict)));
    }
    Ok(file)
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile> {
    parse_certificate(&read(path)?, &path.display().to_string())
}

pub fn read_layer(path: &Path, tol: f64) -> Result<LocalUnitaryLayer> {
    parse_layer(&read(path)?, &path.display().to_string(), tol)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Witness;

    #[test]
    fn state_round_trip_normalizes() {
        let text = r#"{"n": 1, "amplitudes": [[3.0, 0.0], [0.0, 4.0]]}"#;
        let (s, norm) = parse_state(text, "inline", ToleranceContext::default()).unwrap();
        assert!((norm - 5.0).abs() < 1e-15);
        assert!((s.amplitude(1).im - 0.8).abs() < 1e-15);
        let back = to_json(&state_to_file(&s));
        let (t, _) = parse_state(&back, "inline", ToleranceContext::default()).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn parse_errors_carry_line_context() {
        let text = "{\n  \"n\": 1,\n  \"amplitudes\": [[1.0, 0.0], [0.0]]\n}";
        let err = parse_state(text, "bad.json", ToleranceContext::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.json") && msg.contains("line 3"), "{msg}");
        assert!(parse_state(r#"{"n": 2, "amplitudes": [[1,0]]}"#, "x", ToleranceContext::default()).is_err());
    }

    #[test]
    fn certificate_shapes() {
        let v = Verdict::NotEquivalent {
            witness: Witness::new("spectra", 0.2),
        };
        let f = certificate_to_file(&v, Some(3));
        assert_eq!(f.residual, None);
        assert!(f.unitaries.is_empty());
        assert!(certificate_layer(&f, 1e-9).is_err());
        let json = to_json(&f);
        assert!(json.contains("\"residual\": null"));
        assert_eq!(parse_certificate(&json, "x").unwrap(), f);

        let layer = LocalUnitaryLayer::new(0.5, vec![Unitary2::hadamard(), Unitary2::pauli_x()]);
        let v = Verdict::Equivalent {
            certificate: layer.clone(),
            residual: 0.0,
        };
        let f = certificate_to_file(&v, None);
        let back = certificate_layer(&parse_certificate(&to_json(&f), "x").unwrap(), 1e-9).unwrap();
        assert_eq!(back, layer);
    }
}
