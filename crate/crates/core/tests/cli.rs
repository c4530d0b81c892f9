mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{layer, layered};
use luq_core::io::{certificate_to_file, parse_certificate, state_to_file, to_json};
use luq_core::random::{ghz, haar_unitary, rng, w_state};
use luq_core::{LocalUnitaryLayer, PureState, Unitary2, Verdict, C64};

fn luq(args: &[&Path], flags: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luq"))
        .args(flags)
        .args(args)
        .env_remove("LUQ_SEED")
        .output()
        .unwrap()
}

fn write_state(dir: &Path, name: &str, s: &PureState) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, to_json(&state_to_file(s))).unwrap();
    p
}

fn write_certificate(dir: &Path, name: &str, l: LocalUnitaryLayer) -> PathBuf {
    let p = dir.join(name);
    let v = Verdict::Equivalent { certificate: l, residual: 0.0 };
    std::fs::write(&p, to_json(&certificate_to_file(&v, None))).unwrap();
    p
}

fn bell() -> PureState {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new(2, vec![C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)]).unwrap()
}

#[test]
fn standard_form_reports_ghz_as_non_generic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_state(dir.path(), "ghz.json", &ghz(3).unwrap());
    let out = luq(&[Path::new("standard-form"), &g], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generic: false"));
}

#[test]
fn standard_form_writes_layer_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_state(dir.path(), "s.json", &layered(&layer(3, &mut rng(1)), &luq_core::random::haar_state(3, &mut rng(2)).unwrap()));
    let out_path = dir.path().join("canon.json");
    let out = luq(
        &[Path::new("standard-form"), &s],
        &["--quiet", "--output", out_path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    assert!(dir.path().join("canon.json.layer.json").exists());
}

#[test]
fn check_ghz_against_w_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_state(dir.path(), "ghz.json", &ghz(3).unwrap());
    let w = write_state(dir.path(), "w.json", &w_state(3).unwrap());
    let out = luq(&[Path::new("check"), &g, &w], &[]);
    assert_eq!(out.status.code(), Some(1));
    let cert = parse_certificate(&String::from_utf8_lossy(&out.stdout), "stdout").unwrap();
    assert_eq!(cert.verdict, "not_equivalent");
    assert!(cert.witness.unwrap().contains("spectra"));
}

#[test]
fn check_certificate_replays() {
    let dir = tempfile::tempdir().unwrap();
    let g = ghz(3).unwrap();
    let a = write_state(dir.path(), "a.json", &layered(&layer(3, &mut rng(3)), &g));
    let b = write_state(dir.path(), "b.json", &g);
    let cert = dir.path().join("cert.json");
    let out = luq(&[Path::new("check"), &a, &b], &["--quiet", "--output", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = luq(&[Path::new("verify"), &a, &b, &cert], &[]);
    assert_eq!(out.status.code(), Some(0));
    // Same file against itself.
    let out = luq(&[Path::new("check"), &b, &b], &["--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let file = parse_certificate(&String::from_utf8_lossy(&out.stdout), "stdout").unwrap();
    assert!(file.residual.unwrap() <= 1e-12);
}

#[test]
fn identity_certificate_on_unequal_states_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_state(dir.path(), "a.json", &ghz(3).unwrap());
    let b = write_state(dir.path(), "b.json", &w_state(3).unwrap());
    let cert = write_certificate(dir.path(), "id.json", LocalUnitaryLayer::identity(3));
    let out = luq(&[Path::new("verify"), &a, &b, &cert], &[]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    let r: f64 = text.trim().trim_start_matches("residual: ").parse().unwrap();
    assert!(r > 0.1);
}

#[test]
fn w_times_w_conjugate_fixes_the_bell_pair() {
    let dir = tempfile::tempdir().unwrap();
    let b = write_state(dir.path(), "bell.json", &bell());
    let w: Unitary2 = haar_unitary(&mut rng(4));
    let cert = write_certificate(dir.path(), "ww.json", LocalUnitaryLayer::new(0.0, vec![w, w.conj()]));
    let out = luq(&[Path::new("verify"), &b, &b, &cert], &[]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn random_ghz_fixture_and_seed_env() {
    let out = luq(&[Path::new("random"), Path::new("ghz"), Path::new("3")], &[]);
    assert_eq!(out.status.code(), Some(0));
    let (s, _) = luq_core::io::parse_state(&String::from_utf8_lossy(&out.stdout), "stdout", Default::default()).unwrap();
    assert!(s.max_abs_diff(&ghz(3).unwrap()) < 1e-15);

    let by_flag = luq(&[Path::new("random"), Path::new("haar_state"), Path::new("3")], &["--seed", "17"]);
    let by_env = Command::new(env!("CARGO_BIN_EXE_luq"))
        .args(["random", "haar_state", "3"])
        .env("LUQ_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(by_flag.stdout, by_env.stdout);
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"n\": 2, \"amplitudes\": [[1, 0]]}").unwrap();
    let out = luq(&[Path::new("standard-form"), &p], &[]);
    assert_eq!(out.status.code(), Some(3));
}
