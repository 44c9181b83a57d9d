use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use polymoment::ExactComplex;
use polymoment_cli::verify::{self, VerifyOptions};
use polymoment_cli::{compute, config_points, io, reconstruct, svg, CliError, NumberMode, EXIT_NUMERIC};
use serde_json::Value;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Compute,
    Reconstruct,
    Verify,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

/// Moments of polygonal measures: compute, reconstruct, verify.
#[derive(Parser, Debug)]
#[command(name = "polymoment", version)]
struct Args {
    /// Command to run (also accepted as --command).
    #[arg(value_enum)]
    command: Option<Command>,
    #[arg(long = "command", value_enum, conflicts_with = "command")]
    command_flag: Option<Command>,
    /// JSON input file; `-` or absent reads stdin (verify reads nothing unless given).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; stdout if absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Relative moment mismatch accepted by reconstruct.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value = "all")]
    suite: String,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Writes an SVG drawing of the input or reconstructed polygon.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> Result<Value, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::input(e.to_string()))?;
        }
    }
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("invalid JSON: {e}")))
}

fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError { exit: EXIT_NUMERIC, kind: "IoError".into(), message: e.to_string(), report: None };
    match path {
        Some(p) => fs::write(p, text).map_err(io_err),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run(args: &Args) -> Result<Value, CliError> {
    let command = args.command.or(args.command_flag).ok_or_else(|| CliError::input("missing command"))?;
    let mode = match args.mode {
        ModeArg::Exact => NumberMode::Exact,
        ModeArg::Float => NumberMode::Float,
    };
    match command {
        Command::Compute => {
            let doc = read_input(args.input.as_ref())?;
            let out = compute(&doc, args.n, args.kmax, mode)?;
            if let Some(path) = &args.svg {
                let config = io::parse_config(&doc)?.build::<polymoment::ApproxComplex>()?;
                write_text(Some(path), &svg::polygon_svg(&config_points(&config)))?;
            }
            Ok(out)
        }
        Command::Reconstruct => {
            let doc = read_input(args.input.as_ref())?;
            let rec = reconstruct(&doc, args.n, mode, args.tol)?;
            if let Some(path) = &args.svg {
                write_text(Some(path), &svg::polygon_svg(&rec.points))?;
            }
            Ok(rec.json)
        }
        Command::Verify => {
            let config = match &args.input {
                Some(p) => Some(io::parse_config(&read_input(Some(p))?)?.build::<ExactComplex>()?),
                None => None,
            };
            let report = verify::run(&args.suite, &VerifyOptions { seed: args.seed, config })?;
            if report["passed"] != Value::Bool(true) {
                return Err(CliError {
                    exit: polymoment_cli::EXIT_FAILED,
                    kind: "VerificationFailed".into(),
                    message: format!("{} of {} checks failed", report["failed"], report["cases"]),
                    report: Some(report),
                });
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(jobs) = args.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match run(&args) {
        Ok(out) => match write_text(args.output.as_ref(), &pretty(&out)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{}", e.to_json());
                ExitCode::from(e.exit)
            }
        },
        Err(e) => {
            if let Some(report) = &e.report {
                let _ = write_text(args.output.as_ref(), &pretty(report));
            }
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit)
        }
    }
}
