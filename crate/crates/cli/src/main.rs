//! `djdisc`: verification, certification, search and sweep workflows for
//! Deutsch-Jozsa as two-channel discrimination.
//!
//! Exit codes: 0 success, 1 property failure, 2 resource limit, 3 input error.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use djdisc_core::channels::{apply_balanced_channel, apply_ensemble_channel, ClassEnsemble};
use djdisc_core::discrimination::{
    build_certainty_povm, certainty_certificate, is_perfect_initial_state, search_perfect_state, TwoOutcomePovm,
};
use djdisc_core::dj::{classical_witness, sweep_all, MAX_CLASSICAL_BITS};
use djdisc_core::linalg::frobenius_distance;
use djdisc_core::sampling::random_mixed_state;
use djdisc_core::{ComplexMatrix, DensityOperator, Error, FunctionClass, PureState, DEFAULT_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use report::Format;

const TOL_ENV: &str = "DJDISC_TOL";
const MAX_EXHAUSTIVE_BITS: usize = 3;
const SEARCH_TARGET: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "djdisc", version, about = "Deutsch-Jozsa as discrimination between two quantum operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Tolerance; overrides DJDISC_TOL.
    #[arg(long)]
    tol: Option<f64>,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the brute-force balanced ensemble with the closed-form channel.
    VerifyChannel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the certainty certificate for a state or density-matrix file.
    Certify {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every admissible oracle against a uniform-magnitude state.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Comma-separated phases in radians, one per basis state (default all zero).
        #[arg(long, allow_hyphen_values = true)]
        phases: Option<String>,
        #[arg(long, value_enum, default_value = "certainty")]
        povm: PovmChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Numerically search for a perfect initial state.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 500)]
        iterations: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Classical deterministic query bound witness.
    Classical {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PovmChoice {
    Certainty,
    IdentityHalf,
}

#[derive(Debug)]
enum Failure {
    Resource(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(msg) => Failure::Resource(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn resolve_tol(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("{TOL_ENV}={raw:?} is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Failure::Input(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn check_n(n: usize, max: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Input("n must be at least 1".into()));
    }
    if n > max {
        return Err(Failure::Resource(format!("n = {n} exceeds the limit of {max}")));
    }
    Ok(())
}

fn emit<T: Serialize>(report: &T, common: &Common) -> Result<(), Failure> {
    report::emit(report, common.format, common.out.as_deref())?;
    Ok(())
}

#[derive(Serialize)]
struct ChannelReport {
    n: usize,
    samples: usize,
    seed: u64,
    tol: f64,
    max_residual: f64,
    passed: bool,
}

fn verify_channel(n: usize, samples: usize, seed: u64, common: &Common) -> Outcome {
    let tol = resolve_tol(common.tol)?;
    check_n(n, MAX_EXHAUSTIVE_BITS)?;
    let ens = ClassEnsemble::uniform(FunctionClass::Balanced, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0f64;
    for _ in 0..samples {
        let rho = random_mixed_state(1 << n, &mut rng);
        let brute = apply_ensemble_channel(&ens, &rho)?;
        let closed = apply_balanced_channel(&rho)?;
        max_residual = max_residual.max(frobenius_distance(brute.matrix(), closed.matrix())?);
    }
    let passed = max_residual <= tol;
    emit(&ChannelReport { n, samples, seed, tol, max_residual, passed }, common)?;
    Ok(passed)
}

fn load_state(path: &Path, tol: f64) -> Result<DensityOperator, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", path.display()));
    if value.get("amplitudes").is_some() {
        let psi: PureState = serde_json::from_value(value).map_err(bad)?;
        if !psi.is_normalized(tol) {
            return Err(Error::NotNormalized(psi.norm_sqr()).into());
        }
        Ok(psi.projector()?)
    } else if value.get("data").is_some() {
        let m: ComplexMatrix = serde_json::from_value(value).map_err(bad)?;
        Ok(DensityOperator::new(m, tol)?)
    } else {
        Err(Failure::Input(format!(
            "{}: expected a state (\"amplitudes\") or matrix (\"data\") object",
            path.display()
        )))
    }
}

fn certify(path: &Path, common: &Common) -> Outcome {
    let tol = resolve_tol(common.tol)?;
    let rho = load_state(path, tol)?;
    let cert = certainty_certificate(&rho, tol);
    emit(&cert, common)?;
    Ok(cert.verdict)
}

fn parse_phases(raw: &str, dim: usize) -> Result<Vec<f64>, Failure> {
    let phases = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::Input(format!("bad phase {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if phases.len() != dim {
        return Err(Failure::Input(format!("expected {dim} phases, got {}", phases.len())));
    }
    Ok(phases)
}

fn sweep(n: usize, phases: Option<&str>, povm: PovmChoice, common: &Common) -> Outcome {
    let tol = resolve_tol(common.tol)?;
    check_n(n, MAX_EXHAUSTIVE_BITS)?;
    let dim = 1usize << n;
    let phases = match phases {
        Some(raw) => parse_phases(raw, dim)?,
        None => vec![0.0; dim],
    };
    let phi = PureState::with_phases(&phases)?;
    let povm = match povm {
        PovmChoice::Certainty => build_certainty_povm(&phi)?,
        PovmChoice::IdentityHalf => TwoOutcomePovm::identity_half(dim),
    };
    let summary = sweep_all(n, &phi, &povm)?;
    emit(&summary, common)?;
    Ok(summary.min_success >= 1.0 - tol)
}

#[derive(Serialize)]
struct SearchReport {
    n: usize,
    seed: u64,
    restarts: usize,
    iterations: usize,
    success: f64,
    perfect: bool,
    state: PureState,
}

fn search(n: usize, seed: u64, restarts: usize, iterations: usize, common: &Common) -> Outcome {
    resolve_tol(common.tol)?;
    check_n(n, MAX_EXHAUSTIVE_BITS)?;
    let (state, success) = search_perfect_state(n, seed, restarts, iterations)?;
    let perfect = is_perfect_initial_state(&state.projector()?, 1e-3);
    emit(&SearchReport { n, seed, restarts, iterations, success, perfect, state }, common)?;
    Ok(success >= 1.0 - SEARCH_TARGET)
}

fn classical(n: usize, common: &Common) -> Outcome {
    resolve_tol(common.tol)?;
    check_n(n, MAX_CLASSICAL_BITS)?;
    let witness = classical_witness(n)?;
    emit(&witness, common)?;
    Ok(witness.verified)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::VerifyChannel { n, samples, seed, common } => verify_channel(n, samples, seed, &common),
        Command::Certify { state, common } => certify(&state, &common),
        Command::Sweep { n, phases, povm, common } => sweep(n, phases.as_deref(), povm, &common),
        Command::Search { n, seed, restarts, iterations, common } => search(n, seed, restarts, iterations, &common),
        Command::Classical { n, common } => classical(n, &common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(3)
        }
    }
}
