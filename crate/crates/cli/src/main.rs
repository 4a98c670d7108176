mod commands;
mod fixtures;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CensusArgs, VerifyArgs};
use report::{Failure, RunReport};

/// Exact computations with symplectic nilpotent t-modules and a numerical
/// Siegel-Weil check for even unimodular lattices.
#[derive(Parser)]
#[command(name = "snt", version)]
struct Cli {
    /// Print the full run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a module file into standard blocks.
    Decompose { module_file: PathBuf },
    /// Orbit invariant of x, and optionally compare with y.
    Orbit { x_file: PathBuf, y_file: Option<PathBuf> },
    /// Compare the invariant classification with brute-force orbits.
    Census(CensusCli),
    /// Check the genus-2 identity at one point of the Siegel upper half space.
    VerifySw(VerifyCli),
    /// Write the sample input files.
    GenFixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CensusCli {
    /// Field size (a prime).
    #[arg(long)]
    q: u64,
    /// Block sizes of M, e.g. `2,1`.
    #[arg(long, conflicts_with = "k")]
    m_type: Option<String>,
    /// Shorthand for M = H_k.
    #[arg(long)]
    k: Option<usize>,
    /// Diagonal Gram entries of V, e.g. `1,1,1`.
    #[arg(long)]
    v_diag: Option<String>,
    /// V is the hyperbolic plane.
    #[arg(long)]
    v_hyperbolic: bool,
    /// Gram matrix of V as a JSON array of rows.
    #[arg(long)]
    v_gram: Option<String>,
    /// Skip the transport check on every same-orbit pair.
    #[arg(long)]
    no_transport: bool,
}

#[derive(Args)]
struct VerifyCli {
    /// Built-in lattice (`e8`).
    #[arg(long)]
    lattice: Option<String>,
    /// Lattice Gram file; repeat for every class in the genus.
    #[arg(long = "gram-file")]
    gram_files: Vec<PathBuf>,
    #[arg(long, default_value = "2i", allow_hyphen_values = true)]
    tau11: String,
    #[arg(long, default_value = "0.5i", allow_hyphen_values = true)]
    tau12: String,
    #[arg(long, default_value = "2i", allow_hyphen_values = true)]
    tau22: String,
    /// Lattice rank.
    #[arg(long = "N")]
    rank: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Also evaluate the left side by the direct double sum.
    #[arg(long)]
    direct: bool,
    /// Override the mass constant C.
    #[arg(long)]
    constant: Option<f64>,
}

fn config_of(cli: &Cli) -> Value {
    let cmd = match &cli.command {
        Command::Decompose { module_file } => json!({ "module_file": module_file }),
        Command::Orbit { x_file, y_file } => json!({ "x_file": x_file, "y_file": y_file }),
        Command::Census(c) => json!({
            "q": c.q, "m_type": c.m_type, "k": c.k, "v_diag": c.v_diag,
            "v_hyperbolic": c.v_hyperbolic, "v_gram": c.v_gram, "transport": !c.no_transport,
        }),
        Command::VerifySw(v) => json!({
            "lattice": v.lattice, "gram_files": v.gram_files, "tau11": v.tau11, "tau12": v.tau12,
            "tau22": v.tau22, "N": v.rank, "tol": v.tol, "direct": v.direct, "constant": v.constant,
        }),
        Command::GenFixtures { out } => json!({ "out": out }),
    };
    json!({ "seed": cli.seed, "enum_limit": snt_core::guard::enum_limit(1_000_000), "command": cmd })
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<(), Failure> {
    match &cli.command {
        Command::Decompose { module_file } => commands::run_decompose(report, module_file),
        Command::Orbit { x_file, y_file } => commands::run_orbit(report, x_file, y_file.as_deref()),
        Command::Census(c) => {
            let m_type = match (&c.m_type, c.k) {
                (Some(m), None) => m.clone(),
                (None, Some(k)) => k.to_string(),
                _ => return Err(Failure::input("give --m-type or --k")),
            };
            let args = CensusArgs {
                q: c.q,
                m_type,
                v_diag: c.v_diag.clone(),
                v_hyperbolic: c.v_hyperbolic,
                v_gram: c.v_gram.clone(),
                transport: !c.no_transport,
            };
            commands::run_census(report, &args)
        }
        Command::VerifySw(v) => {
            let args = VerifyArgs {
                lattice: v.lattice.clone(),
                gram_files: v.gram_files.clone(),
                tau11: v.tau11.clone(),
                tau12: v.tau12.clone(),
                tau22: v.tau22.clone(),
                rank: v.rank,
                tol: v.tol,
                direct: v.direct,
                constant: v.constant,
            };
            commands::run_verify_sw(report, &args)
        }
        Command::GenFixtures { out } => fixtures::generate(report, out, cli.seed),
    }
}

fn print_text(report: &RunReport) {
    println!("snt {}", report.command.iter().skip(1).cloned().collect::<Vec<_>>().join(" "));
    if !report.output.is_null() {
        println!("{}", serde_json::to_string_pretty(&report.output).unwrap_or_default());
    }
    for c in &report.checks {
        if c.details.is_null() {
            println!("{:4} {}", c.status, c.name);
        } else {
            println!("{:4} {} {}", c.status, c.name, c.details);
        }
    }
    println!("{} passed, {} failed ({} ms)", report.totals.passed, report.totals.failed, report.wall_time_ms);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = RunReport::new(std::env::args().collect(), config_of(&cli));
    if let Err(f) = run(&cli, &mut report) {
        eprintln!("error ({}): {}", f.kind, f.message);
        report.error = Some(f.into());
    }
    report.wall_time_ms = start.elapsed().as_millis();
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print_text(&report);
    }
    for c in report.checks.iter().filter(|c| c.status == "fail") {
        eprintln!("check failed: {}", c.name);
    }
    ExitCode::from(report.exit_code() as u8)
}
