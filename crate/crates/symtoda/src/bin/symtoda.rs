//! Command-line front end: `verify`, `simulate`, `leaf`, `orbit-flow`.
//!
//! Exit codes: 0 success, 1 verification/degeneracy failure, 2 input
//! error (including argument parsing, which clap also reports as 2).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use symtoda::cli::{
    cmd_leaf, cmd_orbit_flow, cmd_simulate, cmd_verify, exit_code_for, MatrixFile,
    OrbitFlowConfig, SimulateConfig, VerifyConfig,
};
use symtoda::error::Error;
use symtoda::linalg::Mat;

#[derive(Parser)]
#[command(
    name = "symtoda",
    about = "Poisson-Lie structure on SL(n,R): verification suites, reflection flows, leaf classification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Simulate a reflection flow; writes a trajectory CSV and a JSON sidecar.
    Simulate(SimulateArgs),
    /// Classify the double Bruhat cell of an AN point and check its leaf dimension.
    Leaf(LeafArgs),
    /// Translate a point along its orbit by torus elements D.
    OrbitFlow(OrbitFlowArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix size n (2..=8).
    #[arg(long)]
    n: usize,
    /// Base seed for all sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run a single suite (e.g. r-identities) instead of all.
    #[arg(long)]
    suite: Option<String>,
    /// Tolerance override `<name>=<value>`; repeatable.
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Matrix size n (2..=8).
    #[arg(long)]
    n: usize,
    /// Seed for the initial point when --input is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hamiltonian: a single trace power `2`, or weighted `1=1.0,2=0.5`.
    #[arg(long, default_value = "1")]
    hamiltonian: String,
    /// Initial point as a matrix JSON file (seeded random when absent).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    /// Number of sampled rows (1 = just the initial diagnostics).
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Trajectory CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sidecar JSON path (defaults to `<out>.json`).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct LeafArgs {
    /// AN point as a matrix JSON file.
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON summary here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitFlowArgs {
    /// Matrix size n (2..=8).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Initial point as a matrix JSON file (seeded random when absent).
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSON file with a list of diagonals, e.g. `[[2.0, 0.5], [1.0, 1.0]]`.
    #[arg(long)]
    d: Option<PathBuf>,
    /// Additionally draw this many random diagonals.
    #[arg(long, default_value_t = 2)]
    num_d: usize,
    /// Write the JSON output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected <name>=<value>, got `{s}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad tolerance value in `{s}`: {e}"))?;
    Ok((name.to_string(), value))
}

fn parse_hamiltonian(spec: &str) -> Result<Vec<(u32, f64)>, Error> {
    let mut coeffs = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match part.split_once('=') {
            Some((k, c)) => {
                let k: u32 = k
                    .trim()
                    .parse()
                    .map_err(|e| Error::invalid(format!("bad trace power `{k}`: {e}")))?;
                let c: f64 = c
                    .trim()
                    .parse()
                    .map_err(|e| Error::invalid(format!("bad coefficient `{c}`: {e}")))?;
                coeffs.push((k, c));
            }
            None => {
                let k: u32 = part
                    .parse()
                    .map_err(|e| Error::invalid(format!("bad trace power `{part}`: {e}")))?;
                coeffs.push((k, 1.0));
            }
        }
    }
    if coeffs.is_empty() {
        return Err(Error::invalid("empty Hamiltonian specification"));
    }
    Ok(coeffs)
}

fn read_matrix(path: &PathBuf) -> Result<Mat, Error> {
    let text = fs::read_to_string(path)?;
    MatrixFile::parse(&text)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify(args) => {
            let report = cmd_verify(&VerifyConfig {
                n: args.n,
                seed: args.seed,
                suite: args.suite,
                tol_overrides: args.tol,
            })?;
            emit(&report.to_json()?, &args.out)?;
            eprint!("{}", report.render_text());
            Ok(report.pass())
        }
        Command::Simulate(args) => {
            let b0 = args.input.as_ref().map(read_matrix).transpose()?;
            let (csv, summary) = cmd_simulate(&SimulateConfig {
                n: args.n,
                seed: args.seed,
                hamiltonian: parse_hamiltonian(&args.hamiltonian)?,
                b0,
                t0: args.t0,
                t1: args.t1,
                steps: args.steps,
            })?;
            let sidecar_json = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
            match &args.out {
                Some(path) => {
                    fs::write(path, &csv)?;
                    let sidecar = args
                        .sidecar
                        .clone()
                        .unwrap_or_else(|| PathBuf::from(format!("{}.json", path.display())));
                    fs::write(sidecar, sidecar_json)?;
                }
                None => {
                    print!("{csv}");
                    eprintln!("{sidecar_json}");
                }
            }
            Ok(true)
        }
        Command::Leaf(args) => {
            let summary = cmd_leaf(read_matrix(&args.input)?)?;
            let text = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
            emit(&text, &args.out)?;
            eprintln!(
                "u = {}, l(u) = {}, torus dim = {}, predicted = {}, measured = {}: {}",
                summary.weyl_element,
                summary.length,
                summary.torus_fixed_dimension,
                summary.predicted_dimension,
                summary.measured_rank,
                if summary.pass { "PASS" } else { "FAIL" }
            );
            Ok(summary.pass)
        }
        Command::OrbitFlow(args) => {
            let b0 = args.input.as_ref().map(read_matrix).transpose()?;
            let diagonals: Vec<Vec<f64>> = match &args.d {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => Vec::new(),
            };
            let output = cmd_orbit_flow(&OrbitFlowConfig {
                n: args.n,
                seed: args.seed,
                b0,
                diagonals,
                num_random_d: args.num_d,
            })?;
            let pass = output.pass;
            emit(
                &serde_json::to_string_pretty(&output).map_err(Error::from)?,
                &args.out,
            )?;
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
