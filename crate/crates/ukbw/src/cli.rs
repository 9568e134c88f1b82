//! Command-line surface tying solver, oracle, and analysis together.
//!
//! All documents go to stdout (or `-o`), diagnostics go to stderr. Exit
//! codes: 0 success or passing check, 1 infeasible or failing check, 2
//! usage or input error, 3 budget or cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::degeneracy::find_degeneracy;
use crate::error::{Error, Result};
use crate::generator::{generate_instance, GeneratorSpec, TargetMode};
use crate::io::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, SolutionFile,
};
use crate::model::{weight_span, Configuration, Instance, Solution, SolutionStatus, Tolerance};
use crate::oracle::{oracle_optimum, EnumerationCap};
use crate::stage1::{SearchLimits, Stage1Status};
use crate::stage2::{default_weights, sigma, solve_two_stage, Stage2Objective};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ukbw", version, about = "Strict unbounded knapsack with bounded weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveKind {
    Constant,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    #[value(name = "span_hit")]
    SpanHit,
    Random,
}

#[derive(Debug, Clone)]
struct FloatList(Vec<f64>);

fn parse_float_list(s: &str) -> std::result::Result<FloatList, String> {
    let values = s
        .split(',')
        .map(|part| part.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<f64>, String>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err("values must be finite".to_string());
    }
    Ok(FloatList(values))
}

#[derive(Debug, Clone)]
struct CountList(Vec<u64>);

fn parse_count_list(s: &str) -> std::result::Result<CountList, String> {
    s.split(',')
        .map(|part| part.trim().parse::<u64>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<u64>, String>>()
        .map(CountList)
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected lo,hi".to_string());
    }
    let lo = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let hi = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance with the two-stage solver.
    Solve {
        instance: PathBuf,
        /// Weight-selection objective.
        #[arg(long, value_enum, default_value_t = ObjectiveKind::Constant)]
        objective: ObjectiveKind,
        /// Comma-separated coefficients for the linear objective.
        #[arg(long, value_parser = parse_float_list, allow_hyphen_values = true)]
        coeffs: Option<FloatList>,
        /// Node budget for the configuration search.
        #[arg(long, default_value_t = SearchLimits::default().max_nodes)]
        max_nodes: u64,
        /// Write the solution document here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force optimum by exhaustive enumeration.
    Oracle {
        instance: PathBuf,
        /// Maximum count-box points to enumerate.
        #[arg(long, default_value_t = EnumerationCap::default().max_points)]
        cap: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a solution document against an instance.
    Check {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Look for a weight-degeneracy certificate in a solution.
    Degeneracy {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Generate a deterministic instance.
    Gen {
        /// Number of item types.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// How the target weight is placed.
        #[arg(long, value_enum, default_value_t = ModeArg::SpanHit)]
        mode: ModeArg,
        /// Item value range, as lo,hi.
        #[arg(long, value_parser = parse_range, default_value = "1,10")]
        value_range: (f64, f64),
        /// Minimum-weight range, as lo,hi.
        #[arg(long, value_parser = parse_range, default_value = "1,4")]
        wmin_range: (f64, f64),
        /// w_max is w_min times a factor drawn from this range (lo >= 1).
        #[arg(long, value_parser = parse_range, default_value = "1,2")]
        span_factor_range: (f64, f64),
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the attainable total-weight interval of a configuration.
    Span {
        instance: PathBuf,
        /// Comma-separated item counts.
        #[arg(long, value_parser = parse_count_list)]
        counts: CountList,
    },
}

/// Runs the CLI against the given argument vector, writing documents to
/// `out` and diagnostics to `err`, and returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SearchBoxTooLarge { .. } | Error::BoxExceedsCap { .. } => EXIT_LIMIT,
        Error::InvalidSolution(_) => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

fn load_solution(path: &Path) -> Result<Solution> {
    parse_solution(&fs::read_to_string(path)?)?.to_solution()
}

fn emit(doc: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, doc)?,
        None => out.write_all(doc.as_bytes())?,
    }
    Ok(())
}

fn status_exit_code(status: SolutionStatus) -> i32 {
    match status {
        SolutionStatus::Optimal | SolutionStatus::Feasible => EXIT_OK,
        SolutionStatus::Infeasible => EXIT_INFEASIBLE,
        SolutionStatus::LimitExceeded => EXIT_LIMIT,
    }
}

/// Solution document enriched with the span position and a degeneracy flag,
/// both computed only for complete (optimal) solutions.
fn solution_document(instance: &Instance, solution: &Solution, tol: Tolerance) -> Result<String> {
    let mut file = SolutionFile::from_solution(solution);
    if solution.status == SolutionStatus::Optimal {
        if let Some(config) = &solution.configuration {
            file.sigma = Some(sigma(instance, config, tol)?.value);
        }
        if solution.weights.is_some() {
            file.degenerate = Some(find_degeneracy(instance, solution, tol)?.is_some());
        }
    }
    Ok(serialize_solution(&file))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let tol = Tolerance::default();
    match command {
        Command::Solve {
            instance,
            objective,
            coeffs,
            max_nodes,
            output,
        } => {
            let instance = load_instance(&instance)?;
            let objective = match objective {
                ObjectiveKind::Constant => Stage2Objective::Constant,
                ObjectiveKind::Linear => {
                    let coefficients = coeffs
                        .ok_or_else(|| {
                            Error::Schema("--objective linear requires --coeffs".to_string())
                        })?
                        .0;
                    Stage2Objective::Linear { coefficients }
                }
            };
            let limits = SearchLimits {
                max_nodes,
                ..SearchLimits::default()
            };
            let solution = solve_two_stage(&instance, &objective, &limits, tol)?;
            let doc = solution_document(&instance, &solution, tol)?;
            emit(&doc, output.as_deref(), out)?;
            Ok(status_exit_code(solution.status))
        }
        Command::Oracle {
            instance,
            cap,
            output,
        } => {
            let instance = load_instance(&instance)?;
            let result = oracle_optimum(&instance, EnumerationCap { max_points: cap }, tol)?;
            let solution = match result.status {
                Stage1Status::Optimal => {
                    let config = result.configuration.expect("optimal has configuration");
                    let weights = default_weights(&instance, &config, tol)?;
                    Solution {
                        status: SolutionStatus::Optimal,
                        configuration: Some(config),
                        weights: Some(weights),
                        objective: result.objective,
                    }
                }
                _ => Solution::infeasible(),
            };
            let doc = solution_document(&instance, &solution, tol)?;
            emit(&doc, output.as_deref(), out)?;
            Ok(status_exit_code(solution.status))
        }
        Command::Check { instance, solution } => {
            let instance = load_instance(&instance)?;
            let solution = load_solution(&solution)?;
            let report = crate::model::check_solution(&instance, &solution, tol)?;
            if report.passed() {
                Ok(EXIT_OK)
            } else {
                for violation in &report.violations {
                    writeln!(err, "violation: {violation}")?;
                }
                Ok(EXIT_INFEASIBLE)
            }
        }
        Command::Degeneracy { instance, solution } => {
            let instance = load_instance(&instance)?;
            let solution = load_solution(&solution)?;
            let cert = find_degeneracy(&instance, &solution, tol)?;
            let doc = match cert {
                Some(cert) => format!(
                    "{{\n  \"degenerate\": true,\n  \"i\": {},\n  \"j\": {},\n  \"gamma\": {:.16e},\n  \"delta_max\": {:.16e}\n}}\n",
                    cert.i, cert.j, cert.gamma, cert.delta_max
                ),
                None => "{\n  \"degenerate\": false\n}\n".to_string(),
            };
            out.write_all(doc.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Gen {
            n,
            seed,
            mode,
            value_range,
            wmin_range,
            span_factor_range,
            output,
        } => {
            let spec = GeneratorSpec {
                n,
                seed,
                value_range,
                wmin_range,
                span_factor_range,
                target_mode: match mode {
                    ModeArg::SpanHit => TargetMode::SpanHit,
                    ModeArg::Random => TargetMode::Random,
                },
            };
            let instance = generate_instance(&spec)?;
            emit(&serialize_instance(&instance), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Span { instance, counts } => {
            let instance = load_instance(&instance)?;
            let config = Configuration::new(counts.0);
            let span = weight_span(&instance, &config)?;
            let doc = format!(
                "{{\n  \"low\": {:.16e},\n  \"high\": {:.16e}\n}}\n",
                span.low, span.high
            );
            out.write_all(doc.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}
