//! `symclass classify | hamiltonian | verify`
//!
//! Exit codes: 0 success, 1 input error, 2 ill-conditioned solver,
//! 3 no kernel at the requested interaction length, 4 suite failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use symclass::hamiltonian::{assemble_parent, paper_hamiltonian, Couplings};
use symclass::io::{named_state, StateSpec};
use symclass::report::{classify_report, hamiltonian_report};
use symclass::suites::{x_family_z, Suite};
use symclass::{NamedState, SymError, SymmetricState, ToleranceConfig};

const MAX_FULL_ENV: &str = "SYMCLASS_MAX_FULL";

#[derive(Parser)]
#[command(name = "symclass", version, about = "Entanglement families and parent Hamiltonians of symmetric qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal decomposition, rank profile and interaction length of a state.
    Classify {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        no_timings: bool,
    },
    /// Parent Hamiltonian of a state, with a dense ground-state check.
    Hamiltonian {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Interaction length of the constructive Hamiltonian.
        #[arg(long, conflicts_with = "paper")]
        n_local: Option<usize>,
        /// Closed-form Hamiltonian of a family: ghz, w or x.
        #[arg(long)]
        paper: Option<String>,
        #[arg(long = "J", default_value_t = 1.0)]
        j: f64,
        #[arg(long = "Jz", default_value_t = 3.0)]
        jz: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda_sym: f64,
    },
    /// Run a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        count: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct StateArgs {
    /// Named family: ghz, w, dicke, x, separable.
    #[arg(long, conflicts_with = "state")]
    name: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Excitation number of a Dicke state.
    #[arg(long)]
    k: Option<usize>,
    /// Parameter of the X family, `re` or `re,im`; defaults to 2^(-1/6).
    #[arg(long)]
    z: Option<String>,
    /// JSON state file, or `-` for stdin.
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long)]
    tol_rank: Option<f64>,
    #[arg(long)]
    tol_sep: Option<f64>,
    #[arg(long)]
    tol_resid: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest N for dense 2^N vectors (also SYMCLASS_MAX_FULL).
    #[arg(long)]
    max_full: Option<usize>,
    #[arg(long)]
    pretty: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<SymError> for Failure {
    fn from(e: SymError) -> Self {
        let code = match e {
            SymError::IllConditioned { .. } => 2,
            SymError::NoKernel { .. } => 3,
            _ => 1,
        };
        Self { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl CommonArgs {
    fn tolerances(&self) -> Result<ToleranceConfig, Failure> {
        let mut tol = ToleranceConfig { seed: self.seed, ..Default::default() };
        if let Some(v) = self.tol_rank {
            tol.tol_rank = v;
        }
        if let Some(v) = self.tol_sep {
            tol.tol_sep = v;
        }
        if let Some(v) = self.tol_resid {
            tol.tol_resid = v;
        }
        if let Some(cap) = self.max_full {
            tol.n_full_cap = cap;
        } else if let Ok(text) = std::env::var(MAX_FULL_ENV) {
            tol.n_full_cap = text
                .trim()
                .parse()
                .map_err(|_| input_error(format!("{MAX_FULL_ENV} must be a non-negative integer, got '{text}'")))?;
        }
        tol.validate()?;
        Ok(tol)
    }

    fn print(&self, v: &Value) {
        let text = if self.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
        println!("{}", text.expect("JSON values always serialize"));
    }
}

fn parse_z(text: &str) -> Result<C64, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<f64>().map_err(|_| input_error(format!("bad --z value '{text}'")));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(input_error(format!("bad --z value '{text}'"))),
    }
}

impl StateArgs {
    /// The state and a JSON descriptor of where it came from.
    fn load(&self) -> Result<(SymmetricState, Value), Failure> {
        if let Some(path) = &self.state {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(path)
            }
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
            let spec: StateSpec = serde_json::from_str(&text)
                .map_err(|e| input_error(format!("bad state JSON in {}: {e}", path.display())))?;
            let state = spec.build()?;
            return Ok((state, json!({ "state": spec })));
        }
        let name = self.name.as_deref().ok_or_else(|| input_error("give --name with --n, or --state"))?;
        let n = self.n.ok_or_else(|| input_error("--name needs --n"))?;
        let mut z = self.z.as_deref().map(parse_z).transpose()?;
        if z.is_none() && name.eq_ignore_ascii_case("x") {
            z = Some(x_family_z());
        }
        let family = named_state(name, self.k, z)?;
        let state = family.build(n)?;
        let spec = StateSpec::Named { name: family.label().into(), n, k: self.k, z };
        Ok((state, json!({ "state": spec })))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { state, common, no_timings } => {
            let tol = common.tolerances()?;
            let (st, input) = state.load()?;
            common.print(&classify_report(input, &st, &tol, !no_timings)?);
        }
        Command::Hamiltonian { state, common, n_local, paper, j, jz, gamma, lambda_sym } => {
            let tol = common.tolerances()?;
            let (st, _) = state.load()?;
            let n = st.n_parties();
            let h = match (n_local, paper.as_deref()) {
                (Some(len), None) => assemble_parent(&st, len, lambda_sym, &tol)?,
                (None, Some(family)) => {
                    let family = match family.to_ascii_lowercase().as_str() {
                        "ghz" => NamedState::Ghz,
                        "w" => NamedState::W,
                        "x" => NamedState::X(x_family_z()),
                        other => return Err(input_error(format!("--paper takes ghz, w or x, got '{other}'"))),
                    };
                    paper_hamiltonian(&family, n, Couplings { j, jz, gamma })?
                }
                _ => return Err(input_error("give exactly one of --n-local and --paper")),
            };
            common.print(&hamiltonian_report(&h, &st, &tol)?);
        }
        Command::Verify { suite, count, common } => {
            let tol = common.tolerances()?;
            let which = Suite::parse(&suite)
                .ok_or_else(|| input_error(format!("unknown suite '{suite}': slocc, nesting, bounds or oracle")))?;
            let report = which.run(common.seed, count.unwrap_or(which.default_count()), &tol);
            common.print(&json!(report));
            if !report.all_passed() {
                return Err(Failure {
                    code: 4,
                    message: format!(
                        "{} of {} cases failed; replay with --suite {suite} --seed {}",
                        report.failures.len(),
                        report.cases,
                        report.seed
                    ),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("symclass: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
