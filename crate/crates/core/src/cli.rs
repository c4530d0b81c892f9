//! The `luq` command-line front end.
//!
//! Exit codes: 0 equivalent, 1 not equivalent, 2 undetermined,
//! 3 unreadable or malformed input, 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{LuError, Result};
use crate::io;
use crate::random::{fixture, Fixture, FixtureKind};
use crate::solver::{decide_lu_equivalence, verify_certificate, SolverConfig};
use crate::standard_form::standard_form;
use crate::state::ToleranceContext;

pub const EXIT_INPUT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "luq", version, about = "Local unitary equivalence of multi-qubit pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for fixtures and search restarts.
    #[arg(long, env = "LUQ_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Multi-start count for the variable search.
    #[arg(long, default_value_t = 64, global = true)]
    pub restarts: usize,
    /// Largest accepted certificate residual 1 - |<psi|L|phi>|.
    #[arg(long, global = true)]
    pub tol_fidelity: Option<f64>,
    /// Eigenvalue gap below which a spectrum counts as degenerate.
    #[arg(long, global = true)]
    pub tol_degeneracy: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Layer file written by standard-form (default: <output>.layer.json).
    #[arg(long, global = true)]
    pub layer_output: Option<PathBuf>,
    /// Suppress the human-readable report on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of a state and the layer reaching it.
    StandardForm { input: PathBuf },
    /// Decide whether B can be mapped onto A by local unitaries.
    Check { a: PathBuf, b: PathBuf },
    /// Replay a certificate: residual of A against certificate * B.
    Verify { a: PathBuf, b: PathBuf, certificate: PathBuf },
    /// Generate a fixture: haar_state, layer, ghz, w, cluster or product.
    Random { kind: String, n: usize },
}

impl Cli {
    pub fn tolerances(&self) -> Result<ToleranceContext> {
        let mut tol = ToleranceContext::default();
        if let Some(f) = self.tol_fidelity {
            tol.fidelity_accept = f;
        }
        if let Some(d) = self.tol_degeneracy {
            tol.degeneracy = d;
        }
        tol.validate()?;
        Ok(tol)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            restarts: self.restarts,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

fn exit_code_for(err: &LuError) -> i32 {
    match err {
        LuError::Io(_) | LuError::Parse(_) | LuError::InvalidState(_) | LuError::NotUnitary(_) => EXIT_INPUT,
        _ => EXIT_USAGE,
    }
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    quiet: bool,
}

impl Io<'_> {
    fn report(&mut self, line: &str) {
        if !self.quiet {
            let _ = writeln!(self.stderr, "{line}");
        }
    }

    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => fs::write(p, text).map_err(|e| LuError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))),
            None => self.stdout.write_all(text.as_bytes()).map_err(LuError::Io),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{}", e.render());
                    return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { 0 };
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let mut io = Io {
        stdout,
        stderr,
        quiet: cli.quiet,
    };
    match execute(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<i32> {
    let tol = cli.tolerances()?;
    match &cli.command {
        Command::StandardForm { input } => {
            let (state, norm) = io::read_state(input, tol)?;
            let sf = standard_form(&state)?;
            io.report(&format!("input norm: {norm:.12}"));
            io.report(&format!("generic: {}", sf.generic));
            for (q, s) in sf.spectra.iter().enumerate() {
                io.report(&format!("qubit {q}: spectrum ({:.12}, {:.12})", s.lambda1, s.lambda2));
            }
            if state.n() == 2 {
                let s = &sf.spectra[0];
                io.report(&format!(
                    "schmidt coefficients: {:.12} {:.12}",
                    s.lambda1.max(0.0).sqrt(),
                    s.lambda2.max(0.0).sqrt()
                ));
            }
            if !sf.generic {
                io.report("note: some marginal is maximally mixed; this form is not unique");
            }
            io.emit(cli.output.as_deref(), &io::to_json(&io::state_to_file(&sf.canonical)))?;
            let layer_path = cli.layer_output.clone().or_else(|| {
                cli.output.as_ref().map(|p| {
                    let mut s = p.clone().into_os_string();
                    s.push(".layer.json");
                    PathBuf::from(s)
                })
            });
            if let Some(p) = layer_path {
                io.emit(Some(&p), &io::to_json(&io::layer_to_file(&sf.layer)))?;
            }
            Ok(0)
        }
        Command::Check { a, b } => {
            let (psi, _) = io::read_state(a, tol)?;
            let (phi, _) = io::read_state(b, tol)?;
            if psi.n() != phi.n() {
                return Err(LuError::SizeMismatch {
                    expected: psi.n(),
                    found: phi.n(),
                });
            }
            let verdict = decide_lu_equivalence(&psi, &phi, &cli.solver_config())?;
            let file = io::certificate_to_file(&verdict, Some(cli.seed));
            io.emit(cli.output.as_deref(), &io::to_json(&file))?;
            match &verdict {
                crate::verdict::Verdict::Equivalent { residual, .. } => {
                    io.report(&format!("equivalent (residual {residual:.3e})"))
                }
                crate::verdict::Verdict::NotEquivalent { witness } => io.report(&format!(
                    "not equivalent: {} (margin {:.3e})",
                    witness.description, witness.margin
                )),
                crate::verdict::Verdict::Undetermined { diagnostics } => {
                    io.report(&format!("undetermined: {}", diagnostics.reason))
                }
            }
            Ok(verdict.exit_code())
        }
        Command::Verify { a, b, certificate } => {
            let (psi, _) = io::read_state(a, tol)?;
            let (phi, _) = io::read_state(b, tol)?;
            let file = io::read_certificate(certificate)?;
            let layer = io::certificate_layer(&file, tol.unitary)?;
            let residual = verify_certificate(&psi, &phi, &layer)?;
            io.emit(None, &format!("residual: {residual:.6e}\n"))?;
            Ok(if residual <= tol.fidelity_accept { 0 } else { 1 })
        }
        Command::Random { kind, n } => {
            let kind: FixtureKind = kind.parse().map_err(|_| {
                LuError::Precondition(format!(
                    "unknown kind '{kind}'; expected one of haar_state, layer, ghz, w, cluster, product"
                ))
            })?;
            let text = match fixture(kind, *n, cli.seed).map_err(|e| LuError::Precondition(e.to_string()))? {
                Fixture::State(s) => io::to_json(&io::state_to_file(&s)),
                Fixture::Layer(l) => io::to_json(&io::layer_to_file(&l)),
            };
            io.emit(cli.output.as_deref(), &text)?;
            Ok(0)
        }
    }
}
