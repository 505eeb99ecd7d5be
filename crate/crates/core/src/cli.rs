//! Command-line front end and the JSON state-file format.
//!
//! A state file looks like
//!
//! ```json
//! {
//!   "version": 1,
//!   "n_qubits": 3,
//!   "label": "ghz3",
//!   "amplitudes": [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0],
//!                  [0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071067811865476, 0.0]]
//! }
//! ```
//!
//! Each amplitude is a `[re, im]` pair. Entry `k` is the amplitude of the
//! basis state whose bits, read with `A1` as the most significant bit,
//! spell `k`; for four qubits entry `8*i1 + 4*i2 + 2*i3 + i4` holds
//! `a[i1 i2 i3 i4]`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::invariants::tau3;
use crate::report::{full_report, relative_spread, InvariantReport};
use crate::state::{Builtin, Qubit, StateVector};
use crate::verify::{
    check_cross_triple_delta, check_homogeneity, check_lu_invariance, check_transformation_law,
    CheckOutcome, LocalGroup, ToleranceConfig,
};

pub const STATE_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub version: u32,
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_state(state: &StateVector, label: Option<String>) -> Self {
        Self {
            version: STATE_FILE_VERSION,
            n_qubits: state.n_qubits(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            label,
        }
    }

    pub fn to_state(&self) -> Result<StateVector, Error> {
        if self.version != STATE_FILE_VERSION {
            return Err(Error::FileVersion(self.version));
        }
        let amps = self
            .amplitudes
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        StateVector::new(self.n_qubits, amps)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed state file {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid state{}: {source}", context.as_deref().map(|c| format!(" in {c}")).unwrap_or_default())]
    State {
        context: Option<String>,
        source: Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl From<Error> for CliError {
    fn from(source: Error) -> Self {
        CliError::State {
            context: None,
            source,
        }
    }
}

pub fn read_state_file(path: &Path) -> Result<(StateVector, Option<String>), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: StateFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let state = file.to_state().map_err(|source| CliError::State {
        context: Some(path.display().to_string()),
        source,
    })?;
    Ok((state, file.label))
}

pub fn write_state_file(
    path: &Path,
    state: &StateVector,
    label: Option<String>,
) -> std::io::Result<()> {
    let file = StateFile::from_state(state, label);
    let mut text = serde_json::to_string_pretty(&file).expect("state file serializes");
    text.push('\n');
    std::fs::write(path, text)
}

#[derive(Debug, Parser)]
#[command(
    name = "four-tangle",
    version,
    about = "Polynomial invariants and four tangle of four-qubit pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the invariant report of a state.
    Compute(ComputeArgs),
    /// Run the numerical verification suites.
    Verify(VerifyArgs),
    /// List the builtin states and their known tangles.
    Catalog,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Builtin state name (see `catalog`).
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub state: Option<String>,
    /// JSON state file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Qubit placed in the A4 slot, or `all`.
    #[arg(long, default_value = "A4")]
    pub distinguished: Distinguished,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Relative tolerance for the transformation and homogeneity suites.
    #[arg(long, default_value_t = 1e-10)]
    pub rel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinguished {
    One(Qubit),
    All,
}

impl FromStr for Distinguished {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.eq_ignore_ascii_case("all") {
            Ok(Distinguished::All)
        } else {
            s.parse().map(Distinguished::One)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Transformation,
    Lu,
    Homogeneity,
    CrossTriple,
    All,
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Catalog => Ok(Output {
            stdout: cmd_catalog(),
            code: EXIT_OK,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossTriple {
    pub delta_spread: f64,
    pub i48_spread: f64,
}

/// Output of `compute`. Three-qubit inputs are embedded with `A4 = |0>`
/// and additionally carry `tau3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputeDocument {
    pub label: Option<String>,
    pub n_qubits: usize,
    /// Norm of the input before normalization.
    pub norm: f64,
    pub degenerate: bool,
    pub tau3: Option<f64>,
    pub reports: Vec<InvariantReport>,
    pub cross_triple: Option<CrossTriple>,
}

pub fn compute_document(
    state: &StateVector,
    label: Option<String>,
    distinguished: Distinguished,
) -> Result<ComputeDocument, Error> {
    let norm = state.norm_squared().sqrt();
    let unit = state.normalized();
    let degenerate = unit.is_degenerate();
    let (four, tau3) = match unit.n_qubits() {
        3 => {
            let t = if degenerate { 0.0 } else { tau3(&unit)? };
            (unit.embed_with_a4_zero()?, Some(t))
        }
        _ => (unit, None),
    };
    let qubits: Vec<Qubit> = match distinguished {
        Distinguished::One(q) => vec![q],
        Distinguished::All => Qubit::ALL.to_vec(),
    };
    let reports = qubits
        .iter()
        .map(|q| full_report(&four, *q))
        .collect::<Result<Vec<_>, _>>()?;
    let floor = ToleranceConfig::default().abs_floor;
    let cross_triple = (distinguished == Distinguished::All).then(|| CrossTriple {
        delta_spread: relative_spread(&reports.iter().map(|r| r.delta).collect::<Vec<_>>(), floor),
        i48_spread: relative_spread(&reports.iter().map(|r| r.i48).collect::<Vec<_>>(), floor),
    });
    Ok(ComputeDocument {
        label,
        n_qubits: state.n_qubits(),
        norm,
        degenerate,
        tau3,
        reports,
        cross_triple,
    })
}

fn cmd_compute(args: &ComputeArgs) -> Result<Output, CliError> {
    let (state, label) = match (&args.state, &args.file) {
        (Some(name), _) => (name.parse::<Builtin>()?.state(), Some(name.clone())),
        (None, Some(path)) => read_state_file(path)?,
        (None, None) => {
            return Err(CliError::Usage(
                "one of --state or --file is required".into(),
            ))
        }
    };
    let doc = compute_document(&state, label, args.distinguished)?;
    let stdout = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&doc),
    };
    Ok(Output {
        stdout,
        code: EXIT_OK,
    })
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.12e} {:+.12e}i", z.re, z.im)
}

fn render_text(doc: &ComputeDocument) -> String {
    let mut s = String::new();
    let label = doc.label.as_deref().unwrap_or("<unnamed>");
    let _ = writeln!(s, "state: {label} ({} qubits)", doc.n_qubits);
    let _ = writeln!(s, "input norm: {:.12}", doc.norm);
    if doc.degenerate {
        let _ = writeln!(s, "warning: all-zero state, every invariant is zero");
    }
    if let Some(t) = doc.tau3 {
        let _ = writeln!(s, "tau3: {t:.12}  (embedded as A1A2A3 (x) |0>_A4)");
    }
    for r in &doc.reports {
        let _ = writeln!(s, "\n[distinguished {}]", r.distinguished_qubit);
        let m = &r.three_qubit_moduli;
        for (name, v, abs) in [
            ("I3_0", r.i3_0, m.i3_0),
            ("I3_1", r.i3_1, m.i3_1),
            ("P_0", r.p_0, m.p_0),
            ("P_1", r.p_1, m.p_1),
            ("T", r.t, m.t),
        ] {
            let _ = writeln!(s, "  {name:<6}{}   |.| = {abs:.12e}", fmt_c(v));
        }
        let _ = writeln!(s, "  {:<6}{}", "I48", fmt_c(r.i48));
        let _ = writeln!(s, "  {:<6}{}", "J", fmt_c(r.j));
        let _ = writeln!(s, "  {:<6}{}", "Delta", fmt_c(r.delta));
        let _ = writeln!(s, "  tau4  {:.12}", r.tau4);
        let _ = writeln!(s, "  two-qubit invariants (A1A2):");
        for lv in &r.two_qubit_invariants {
            let _ = writeln!(s, "    {:<28}{}", lv.label, fmt_c(lv.value));
        }
    }
    if let Some(ct) = &doc.cross_triple {
        let _ = writeln!(s, "\ncross-triple Delta spread: {:.3e}", ct.delta_spread);
        let _ = writeln!(s, "cross-triple I48 spread:   {:.3e}", ct.i48_spread);
    }
    s
}

pub fn run_suites(
    suite: Suite,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Vec<CheckOutcome>, Error> {
    let lu = || -> Result<CheckOutcome, Error> {
        let su = check_lu_invariance(trials, seed, LocalGroup::SpecialUnitary, tol)?;
        let u = check_lu_invariance(trials, seed, LocalGroup::Unitary, tol)?;
        Ok(CheckOutcome::merge("lu_invariance", &[su, u]))
    };
    Ok(match suite {
        Suite::Transformation => vec![check_transformation_law(trials, seed, tol)?],
        Suite::Lu => vec![lu()?],
        Suite::Homogeneity => vec![check_homogeneity(trials, seed, tol)?],
        Suite::CrossTriple => vec![check_cross_triple_delta(trials, seed, tol)?],
        Suite::All => vec![
            check_transformation_law(trials, seed, tol)?,
            lu()?,
            check_homogeneity(trials, seed, tol)?,
            check_cross_triple_delta(trials, seed, tol)?,
        ],
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let tol = ToleranceConfig {
        rel: args.rel,
        ..ToleranceConfig::default()
    };
    tol.validate()?;
    let trials = usize::try_from(args.trials)
        .map_err(|_| CliError::Usage("--trials is too large".into()))?;
    Ok(outcome_lines(&run_suites(
        args.suite, trials, args.seed, &tol,
    )?))
}

/// One JSON line per outcome; exit code 1 unless every outcome passed.
pub fn outcome_lines(outcomes: &[CheckOutcome]) -> Output {
    let mut stdout = String::new();
    for o in outcomes {
        stdout.push_str(&serde_json::to_string(o).expect("outcome serializes"));
        stdout.push('\n');
    }
    let code = if outcomes.iter().all(|o| o.pass) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Output { stdout, code }
}

/// Known tangle of each builtin, with how the value is known.
pub fn known_tangle(b: Builtin) -> (&'static str, f64, &'static str) {
    match b {
        Builtin::Ghz4 => ("τ4", 1.0, "hand expansion"),
        Builtin::W4 => ("τ4", 0.0, "hand expansion"),
        Builtin::Cluster4 => ("τ4", 1.0, "hand expansion"),
        Builtin::Product4 => ("τ4", 0.0, "product state"),
        Builtin::Ghz3 => ("τ3", 1.0, "hand expansion"),
        Builtin::W3 => ("τ3", 0.0, "hand expansion"),
    }
}

pub fn cmd_catalog() -> String {
    let mut s = String::new();
    for b in Builtin::ALL {
        let (name, value, basis) = known_tangle(b);
        let _ = writeln!(
            s,
            "{} {name}={value}  n={}  [{basis}]  {}",
            b.name(),
            b.state().n_qubits(),
            b.describe()
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinguished_parsing() {
        assert_eq!("all".parse::<Distinguished>().unwrap(), Distinguished::All);
        assert_eq!(
            "A2".parse::<Distinguished>().unwrap(),
            Distinguished::One(Qubit::A2)
        );
        assert!("A5".parse::<Distinguished>().is_err());
    }

    #[test]
    fn state_file_checks() {
        let mut f = StateFile::from_state(&Builtin::Ghz4.state(), None);
        f.amplitudes.pop();
        let err = f.to_state().unwrap_err().to_string();
        assert!(err.contains("expected 16 amplitudes for 4 qubits"), "{err}");
        let mut f = StateFile::from_state(&Builtin::Ghz4.state(), None);
        f.version = 2;
        assert_eq!(f.to_state(), Err(Error::FileVersion(2)));
    }

    #[test]
    fn catalog_lines() {
        let c = cmd_catalog();
        assert!(c.contains("ghz4 τ4=1"));
        assert!(c.contains("w4 τ4=0"));
        assert!(c.contains("product4 τ4=0"));
        assert!(c.contains("ghz3 τ3=1"));
        assert_eq!(c, cmd_catalog());
    }

    #[test]
    fn compute_document_for_three_qubits() {
        let doc =
            compute_document(&Builtin::Ghz3.state(), None, Distinguished::One(Qubit::A4)).unwrap();
        assert!((doc.tau3.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(doc.reports[0].tau4, 0.0);
    }

    #[test]
    fn compute_normalizes_input() {
        let s = Builtin::Ghz4.state().scaled(Complex64::new(0.0, 3.0));
        let doc = compute_document(&s, None, Distinguished::All).unwrap();
        assert!((doc.norm - 3.0).abs() < 1e-12);
        assert_eq!(doc.reports.len(), 4);
        for r in &doc.reports {
            assert!((r.tau4 - 1.0).abs() < 1e-12);
        }
        assert!(doc.cross_triple.is_some());
    }

    #[test]
    fn failed_outcome_exits_1() {
        let tight = ToleranceConfig {
            rel: 1e-300,
            abs_floor: 1e-300,
            invariance_rel: 1e-300,
        };
        let loose = ToleranceConfig::default();
        let bad = run_suites(Suite::Homogeneity, 5, 1, &tight).unwrap();
        let good = run_suites(Suite::Homogeneity, 5, 1, &loose).unwrap();
        assert_eq!(outcome_lines(&bad).code, EXIT_FAILED);
        assert_eq!(outcome_lines(&good).code, EXIT_OK);
        let mixed = [good[0].clone(), bad[0].clone()];
        assert_eq!(outcome_lines(&mixed).stdout.lines().count(), 2);
        assert_eq!(outcome_lines(&mixed).code, EXIT_FAILED);
    }

    #[test]
    fn degenerate_compute() {
        let z = StateVector::new(4, vec![Complex64::new(0.0, 0.0); 16]).unwrap();
        let doc = compute_document(&z, None, Distinguished::All).unwrap();
        assert!(doc.degenerate);
        assert!(doc.reports.iter().all(|r| r.tau4 == 0.0));
        let z3 = StateVector::new(3, vec![Complex64::new(0.0, 0.0); 8]).unwrap();
        assert_eq!(
            compute_document(&z3, None, Distinguished::All)
                .unwrap()
                .tau3,
            Some(0.0)
        );
    }
}
