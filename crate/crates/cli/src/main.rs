use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;
use stabq_cli::report::{render_text, SCHEMA};
use stabq_cli::run::{load, parse_sides, run, run_batch, Command, Options};
use stabq_cli::CliError;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Invariants Z and S, charge modules and mobility.
    Analyze,
    /// Charge modules Q^i with invariant factors and annihilators.
    Charges,
    /// Mobility flags and the period ℓ (exit 0 even when not mobile).
    Mobility,
    /// Scalar braiding Ω₀ between Q^p and Q^(D-2-p).
    Braid,
    /// Topological spin of 2D charges.
    Spin,
    /// Čech cocycle representatives of charges.
    Cocycle,
    /// Finite-torus cross-checks.
    Oracle,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Analyze => Command::Analyze,
            Cmd::Charges => Command::Charges,
            Cmd::Mobility => Command::Mobility,
            Cmd::Braid => Command::Braid,
            Cmd::Spin => Command::Spin,
            Cmd::Cocycle => Command::Cocycle,
            Cmd::Oracle => Command::Oracle,
        }
    }
}

/// Homological invariants of translation-invariant Pauli stabilizer codes.
///
/// Classes (--classes) are comma separated: `k` is the k-th generator of the
/// charge module, `r@k` its multiple by a ring element r (e.g. `1 + x@0`),
/// and `+` / `-` stand for `(1 ± x)` times generator 0.
#[derive(Debug, Parser)]
#[command(name = "stabq", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Spec file (JSON).
    #[arg(required_unless_present = "batch")]
    spec: Option<PathBuf>,
    /// Print the JSON report.
    #[arg(long)]
    json: bool,
    /// Charge degree (charges, braid, cocycle).
    #[arg(long)]
    degree: Option<usize>,
    /// Classes, e.g. `+,+` or `0,1@1`.
    #[arg(long)]
    classes: Option<String>,
    /// Use this period ℓ instead of the one certified by mobility.
    #[arg(long)]
    ell_override: Option<u64>,
    /// Window half-width for operator expansion and window estimates.
    #[arg(long)]
    window: Option<i64>,
    /// Torus side lengths, e.g. 4x4.
    #[arg(long)]
    sides: Option<String>,
    /// Analyze every *.json spec in a directory concurrently.
    #[arg(long, conflicts_with = "spec")]
    batch: Option<PathBuf>,
}

fn options(args: &Args) -> Result<Options, CliError> {
    Ok(Options {
        degree: args.degree,
        classes: args.classes.as_ref().map(|c| c.split(',').map(str::to_string).collect()),
        ell_override: args.ell_override,
        window: args.window,
        sides: args.sides.as_deref().map(parse_sides).transpose()?,
    })
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = match options(&args) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let cmd = Command::from(args.command);
    if let Some(dir) = &args.batch {
        let results = match run_batch(dir, cmd, &opts) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let code = results.iter().map(|(_, r)| r.as_ref().err().map_or(0, |e| e.exit_code())).max().unwrap_or(0);
        if args.json {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|(p, r)| match r {
                    Ok(rep) => serde_json::to_value(rep).expect("reports serialize"),
                    Err(e) => json!({"schema": SCHEMA, "spec": p.display().to_string(), "error": e.to_string(), "exit_code": e.exit_code()}),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&items).expect("reports serialize"));
        } else {
            for (p, r) in &results {
                match r {
                    Ok(rep) => println!("{}", render_text(rep)),
                    Err(e) => eprintln!("{}: error: {e}\n", p.display()),
                }
            }
        }
        return ExitCode::from(code as u8);
    }
    let path = args.spec.as_ref().expect("clap requires a spec without --batch");
    match load(path).and_then(|spec| run(cmd, &spec, &opts)) {
        Ok(rep) => {
            if args.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", render_text(&rep));
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
