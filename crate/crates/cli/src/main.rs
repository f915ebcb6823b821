use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use imethod_lab::{parse_with_overrides, run, LabError, Location};

/// Runs one experiment described by a `key = value` config file.
#[derive(Parser)]
#[command(name = "imethod-lab", version)]
struct Args {
    /// Path to the config file.
    config: PathBuf,

    /// `key=value` applied after the file; may be repeated.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Output directory for the CSV tables, manifest and plot script.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

const THREADS_VAR: &str = "IMETHOD_LAB_THREADS";

fn configure_threads() -> Result<(), LabError> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| LabError::Config {
            location: Location::Default,
            message: format!("{THREADS_VAR} must be a positive integer, got '{v}'"),
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| LabError::Config {
            location: Location::Default,
            message: format!("cannot start {n} worker threads: {e}"),
        })
}

fn main_inner(args: &Args) -> Result<(), LabError> {
    configure_threads()?;
    let text = std::fs::read_to_string(&args.config).map_err(|e| LabError::Config {
        location: Location::Default,
        message: format!("cannot read {}: {e}", args.config.display()),
    })?;
    let cfg = parse_with_overrides(&text, &args.overrides)?;
    let out = run(&cfg, &args.out)?;
    for f in &out.files {
        println!("{}", f.display());
    }
    if !out.failures.is_empty() {
        return Err(LabError::Diagnostic(out.failures.join("; ")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("imethod-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
