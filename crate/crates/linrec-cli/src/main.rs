//! Command-line front end for the `linrec` library.
//!
//! Exit codes: 0 on success, 2 for invalid input (including argument
//! parsing), 3 when a verified mathematical invariant fails — the latter
//! means the library caught itself producing an inconsistent answer and
//! refused to print it.

use clap::{Parser, Subcommand, ValueEnum};
use linrec::ff::{Field, FieldElement, FieldRef};
use linrec::linalg::{
    format_vector, parse_field_matrix, parse_field_vector, parse_rational_matrix,
    parse_rational_vector, Mat,
};
use linrec::padic::{converges_to_zero_with, DEFAULT_DIGIT_CAP, DEFAULT_TRACE_STEPS};
use linrec::period::{analyze, elem_json, orbit_period, standard_basis};
use linrec::{arith, BigRational, Error, Scalar, SuiteCfg};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "linrec",
    version,
    about = "Exact analysis of linear difference systems v_{n+1} = A v_n",
    long_about = "Exact analysis of linear difference systems v_{n+1} = A v_n.\n\
        Over a finite field: predicts the period from the characteristic\n\
        polynomial's irreducible factors and verifies it by matrix powering\n\
        and orbit simulation. Over the rationals: decides p-adic convergence\n\
        to zero from the Newton polygon, cross-checked by exact iteration."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Predict and verify the period over a finite field
    Analyze {
        /// Field order: a prime (7), a prime power (9), or explicit p^m (3^2)
        #[arg(long)]
        field: String,
        /// Coefficients c1,...,ck of x_n = c1 x_{n-1} + ... + ck x_{n-k}
        #[arg(long, conflicts_with = "matrix")]
        recurrence: Option<String>,
        /// Matrix file: dimension k, then k rows of k entries (# starts a comment)
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// With --recurrence: initial values x_0,...,x_{k-1}. With --matrix: a
        /// start vector. Default: state (1,0,...,0)
        #[arg(long)]
        v0: Option<String>,
        /// Probe every standard basis vector instead of one start vector
        #[arg(long)]
        basis: bool,
        /// Seed for the factorizer's internal coin flips (results do not depend on it)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Decide p-adic convergence to zero over the rationals
    Padic {
        /// The prime p of the p-adic metric
        #[arg(long)]
        p: u64,
        /// Coefficients c1,...,ck of x_n = c1 x_{n-1} + ... + ck x_{n-k} (rationals like 3/2 allowed)
        #[arg(long, conflicts_with = "matrix")]
        recurrence: Option<String>,
        /// Matrix file: dimension k, then k rows of k rational entries
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// With --recurrence: initial values x_0,...,x_{k-1}. With --matrix: a
        /// start vector. Default: state (1,0,...,0)
        #[arg(long)]
        v0: Option<String>,
        /// Length of the exact-iteration valuation trace
        #[arg(long, default_value_t = DEFAULT_TRACE_STEPS)]
        steps: usize,
        /// Abort if iterate numerators or denominators exceed this many decimal digits
        #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
        digit_cap: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Simulate one orbit over a finite field and report transient and period
    Simulate {
        /// Field order: a prime (7), a prime power (9), or explicit p^m (3^2)
        #[arg(long)]
        field: String,
        /// Coefficients c1,...,ck of x_n = c1 x_{n-1} + ... + ck x_{n-k}
        #[arg(long, conflicts_with = "matrix")]
        recurrence: Option<String>,
        /// Matrix file: dimension k, then k rows of k entries
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// With --recurrence: initial values x_0,...,x_{k-1}. With --matrix: a
        /// start vector. Default: state (1,0,...,0)
        #[arg(long)]
        v0: Option<String>,
        /// Give up after this many steps without a repeated state
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run the bundled reference systems against their known exact answers
    Examples {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    /// Run the randomized property suites
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Full-size trial counts (slower; the sizes the library is validated with)
        #[arg(long)]
        full: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::TheoryViolation(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// `--field` accepts "p", "p^m", or a plain prime power like "8".
fn parse_field_arg(text: &str) -> Result<FieldRef, Error> {
    let text = text.trim();
    if text.contains('^') {
        return Field::parse(text);
    }
    let q: u128 = text
        .parse()
        .map_err(|_| Error::Parse(format!("invalid field order {text:?}")))?;
    if q < 2 {
        return Err(Error::Parse(format!("field order {q} is too small")));
    }
    let factors = arith::factor(q)?;
    if factors.len() != 1 {
        return Err(Error::Parse(format!("field order {q} is not a prime power")));
    }
    let (p, m) = factors[0];
    Field::new(p as u64, m as usize)
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Builds the system matrix and one start vector. With a recurrence the
/// user supplies initial values oldest first; the state vector the matrix
/// acts on holds them newest first, so the list is reversed here.
fn field_system(
    field: &FieldRef,
    recurrence: &Option<String>,
    matrix: &Option<PathBuf>,
    v0: &Option<String>,
) -> Result<(Mat<FieldElement>, Vec<FieldElement>), Error> {
    let (a, reverse_v0) = match (recurrence, matrix) {
        (Some(r), None) => (Mat::companion(&parse_field_vector(field, r)?)?, true),
        (None, Some(path)) => (parse_field_matrix(field, &read_file(path)?)?, false),
        _ => return Err(Error::Parse("provide exactly one of --recurrence or --matrix".into())),
    };
    let k = a.dim();
    let start = match v0 {
        Some(text) => {
            let mut v = parse_field_vector(field, text)?;
            if v.len() != k {
                return Err(Error::Parse(format!(
                    "--v0 has {} entries, the system needs {k}",
                    v.len()
                )));
            }
            if reverse_v0 {
                v.reverse();
            }
            v
        }
        None => {
            let mut v = vec![FieldElement::zero(field); k];
            v[0] = FieldElement::one(field);
            v
        }
    };
    Ok((a, start))
}

fn rational_system(
    recurrence: &Option<String>,
    matrix: &Option<PathBuf>,
    v0: &Option<String>,
) -> Result<(Mat<BigRational>, Vec<BigRational>), Error> {
    let (a, reverse_v0) = match (recurrence, matrix) {
        (Some(r), None) => (Mat::companion(&parse_rational_vector(r)?)?, true),
        (None, Some(path)) => (parse_rational_matrix(&read_file(path)?)?, false),
        _ => return Err(Error::Parse("provide exactly one of --recurrence or --matrix".into())),
    };
    let k = a.dim();
    let proto = a.proto().clone();
    let start = match v0 {
        Some(text) => {
            let mut v = parse_rational_vector(text)?;
            if v.len() != k {
                return Err(Error::Parse(format!(
                    "--v0 has {} entries, the system needs {k}",
                    v.len()
                )));
            }
            if reverse_v0 {
                v.reverse();
            }
            v
        }
        None => {
            let mut v = vec![proto.zero_like(); k];
            v[0] = proto.one_like();
            v
        }
    };
    Ok((a, start))
}

/// JSON shape of a `simulate` run; field order here is the key order.
#[derive(Serialize)]
struct SimulateJson {
    field: String,
    v0: Vec<serde_json::Value>,
    transient: u64,
    period: u64,
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    println!("{s}");
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Analyze { field, recurrence, matrix, v0, basis, seed, output } => {
            let field = parse_field_arg(&field)?;
            let (a, start) = field_system(&field, &recurrence, &matrix, &v0)?;
            let probes = if basis { standard_basis(&field, a.dim()) } else { vec![start] };
            let report = analyze(&a, &probes, seed)?;
            match output {
                Output::Text => print!("{}", report.to_text()),
                Output::Json => print_json(&report.to_json()?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Padic { p, recurrence, matrix, v0, steps, digit_cap, output } => {
            let (a, start) = rational_system(&recurrence, &matrix, &v0)?;
            let report = converges_to_zero_with(&a, p, &start, steps, digit_cap)?;
            match output {
                Output::Text => print!("{}", report.to_text()),
                Output::Json => print_json(&report.to_json())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { field, recurrence, matrix, v0, max_steps, output } => {
            let field = parse_field_arg(&field)?;
            let (a, start) = field_system(&field, &recurrence, &matrix, &v0)?;
            let (transient, period) = orbit_period(&a, &start, max_steps)?;
            match output {
                Output::Text => {
                    println!("v0 = {}", format_vector(&start));
                    println!("transient = {transient}");
                    println!("period = {period}");
                }
                Output::Json => print_json(&SimulateJson {
                    field: field.notation(),
                    v0: start.iter().map(elem_json).collect(),
                    transient: transient as u64,
                    period: u64::try_from(period)
                        .map_err(|_| Error::SizeLimit("period exceeds 64 bits".into()))?,
                })?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { seed, output } => {
            let doc = linrec::run_examples(seed)?;
            match output {
                Output::Text => print!("{}", doc.to_text()),
                Output::Json => print_json(&doc)?,
            }
            if doc.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Selftest { seed, full } => {
            let cfg = if full { SuiteCfg::full() } else { SuiteCfg::quick() }.with_seed(seed);
            let reports = linrec::run_property_suites(&cfg)?;
            let mut ok = true;
            for r in &reports {
                println!("{}", r.summary());
                ok &= r.pass();
            }
            if ok {
                println!("selftest passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("selftest FAILED");
                Ok(ExitCode::from(3))
            }
        }
    }
}
