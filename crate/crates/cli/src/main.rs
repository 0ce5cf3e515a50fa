use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use digibu::analysis::{analyze, BoundaryAdjacency};
use digibu::borsuk_ulam::counterexample_fixture;
use digibu::pgm::read_pgm;
use digibu::regularity::{check_regularity, Verdict};
use digibu::verify::{self, Scope};
use digibu::Error;

const INVALID_INPUT: u8 = 1;
const FINDING: u8 = 2;

#[derive(Parser)]
#[command(name = "digibu", version, about = "Digital Borsuk-Ulam witnesses and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closest antipodal brightness pair on the boundary of a PGM image
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = AdjacencyArg::C2)]
        adjacency: AdjacencyArg,
        /// Print the JSON report (default)
        #[arg(long, conflicts_with = "summary")]
        json: bool,
        /// Print a short human-readable summary instead of JSON
        #[arg(long)]
        summary: bool,
    },
    /// Run the theorem verification corpora
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Decide regularity of c_k on Z^n in a finite window
    Regularity {
        #[arg(long = "dim")]
        dim: usize,
        #[arg(long)]
        k: usize,
    },
    /// Show the continuous function on the boundary of [-1,1]^3 with no c1 witness
    DemoCounterexample,
}

#[derive(Clone, Copy, ValueEnum)]
enum AdjacencyArg {
    C1,
    C2,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Dim1,
    Highdim,
    Counterexample,
    All,
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(INVALID_INPUT)
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::TheoremViolation(_) => ExitCode::from(FINDING),
        _ => ExitCode::from(INVALID_INPUT),
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable report"));
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for findings here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(INVALID_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Analyze {
            file,
            adjacency,
            json: _,
            summary,
        } => {
            let bytes = match std::fs::read(&file) {
                Ok(b) => b,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let image = match read_pgm(&bytes) {
                Ok(img) => img,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            let adjacency = match adjacency {
                AdjacencyArg::C1 => BoundaryAdjacency::C1,
                AdjacencyArg::C2 => BoundaryAdjacency::C2,
            };
            let report = match analyze(&image, adjacency) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_for(&e);
                }
            };
            if summary {
                print!("{}", report.summary());
            } else {
                print_json(&report);
            }
            if report.theorem_satisfied {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FINDING)
            }
        }
        Command::Verify { scope, seed } => {
            let scope = match scope {
                ScopeArg::Dim1 => Scope::Dim1,
                ScopeArg::Highdim => Scope::HighDim,
                ScopeArg::Counterexample => Scope::Counterexample,
                ScopeArg::All => Scope::All,
            };
            let started = Instant::now();
            let report = verify::run(scope, seed);
            print_json(&report);
            for c in &report.checks {
                eprintln!(
                    "{} {}: {}/{} instances passed",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.instances - c.failures,
                    c.instances
                );
            }
            eprintln!("elapsed {:.2?}", started.elapsed());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FINDING)
            }
        }
        Command::Regularity { dim, k } => match check_regularity(dim, k) {
            Ok(finding) => {
                print_json(&finding);
                eprintln!("runtime {:.2?}", finding.statistics.runtime);
                match finding.verdict {
                    Verdict::RegularInWindow => ExitCode::SUCCESS,
                    Verdict::Violation => ExitCode::from(FINDING),
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_for(&e)
            }
        },
        Command::DemoCounterexample => {
            let (bx, f) = counterexample_fixture();
            let table: Vec<_> = f
                .domain()
                .points()
                .iter()
                .map(|x| {
                    let neg = bx.reflect(x);
                    let (a, b) = (f.value(x).unwrap(), f.value(&neg).unwrap());
                    json!({ "x": x, "f(x)": a, "f(-x)": b, "c1_distance": a.l1_distance(b) })
                })
                .collect();
            let report = verify::run(Scope::Counterexample, 0);
            print_json(&json!({
                "domain": "boundary of [-1,1]^3 under c1",
                "codomain": "Z^2 under c1",
                "values": table,
                "checks": report.checks,
            }));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FINDING)
            }
        }
    }
}
