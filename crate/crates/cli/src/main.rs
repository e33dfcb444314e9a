mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, RunReport};

#[derive(Parser, Debug)]
#[command(name = "algebroid", version, about = "Exact computations for polynomial Lie algebroids")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebroid axioms and every declared representation and metric.
    Validate { file: String },
    /// Betti numbers of the weight-truncated complex.
    Cohomology {
        file: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        max_weight: u32,
        #[arg(long)]
        rep: Option<String>,
    },
    /// The class u_{2k-1} of a representation.
    Charclass {
        file: String,
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Named metric; the identity metric when omitted.
        #[arg(long)]
        metric: Option<String>,
        /// Decide exactness inside this weight truncation.
        #[arg(long)]
        max_weight: Option<u32>,
    },
    /// u_1 of the canonical line bundle.
    Modular {
        file: String,
        #[arg(long, default_value_t = 0)]
        max_weight: u32,
    },
    /// Poisson bivector tools.
    Poisson {
        file: String,
        #[command(subcommand)]
        action: PoissonCommand,
    },
    /// Van Est property harness on a chart groupoid.
    Vanest {
        #[arg(long, value_enum)]
        family: Family,
        /// Base dimension of the pair groupoid.
        #[arg(long)]
        dim: Option<usize>,
        /// Base coordinates of the action groupoid, comma separated.
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,
        /// Group coordinates of the action groupoid, comma separated.
        #[arg(long, value_delimiter = ',')]
        group: Vec<String>,
        /// One polynomial per base coordinate, in group and base coordinates.
        #[arg(long = "action")]
        action: Vec<String>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        check: Vec<Check>,
        /// Largest cochain degree.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_poly_degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum PoissonCommand {
    /// Jacobi identity check.
    Jacobiator,
    /// Print the cotangent algebroid as a description file.
    Cotangent,
    /// Hamiltonian vector field of a function.
    Hamiltonian {
        #[arg(long)]
        f: String,
    },
    /// Modular vector field for the coordinate volume form.
    Modular,
    /// Betti numbers of the truncated Poisson complex.
    Cohomology {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_weight: u32,
    },
    /// Compare u_1 of the canonical line bundle with the modular vector field.
    CrossCheck {
        #[arg(long, default_value_t = 2)]
        max_weight: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pair,
    Action,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    All,
    Chainmap,
    P2,
    P3,
    Multilinear,
    Surjectivity,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let outcome = commands::run(&cli.command, &mut report);
    if cli.timings {
        report.timings_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let code = match outcome {
        Ok(out) => {
            report.status = if out.ok { "ok" } else { "failed" }.into();
            report.result = out.result;
            if cli.json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&out.text);
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let code = f.exit_code();
            report.status = f.status().into();
            report.error = Some(f.to_string());
            report.result = f.detail();
            if cli.json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                eprintln!("error: {f}");
            }
            code
        }
    };
    ExitCode::from(code)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

impl From<algebroid::Error> for Failure {
    fn from(e: algebroid::Error) -> Self {
        Failure::Engine(e)
    }
}
