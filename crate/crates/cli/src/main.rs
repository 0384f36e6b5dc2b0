mod commands;
mod config;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use config::{CliError, Command, RunConfig};

/// Bessel functions of Iwahori-spherical GSp(4) representations: catalog
/// dumps, tower tables, kernel reports and the verification suite.
#[derive(Parser, Debug)]
#[command(name = "gsp4-bessel", version)]
struct Args {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the command of the configuration.
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Output path; stdout when absent. Tower tables also go to a sibling
    /// `.csv` file (one per component for joint systems).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent checks.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
}

fn load(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg: RunConfig = match &args.config {
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    if args.command.is_some() {
        cfg.command = args.command;
    }
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    if args.out.is_some() {
        cfg.output = args.out.clone();
    }
    cfg.check_params()?;
    Ok(cfg)
}

/// Write to a temporary file next to `path`, then rename.
fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn emit(cfg: &RunConfig, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::module("output", e))? + "\n";
    match &cfg.output {
        Some(p) => write_atomic(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let command = cfg.command.ok_or_else(|| CliError::Config("no command given".into()))?;
    match command {
        Command::Catalog => {
            emit(cfg, &commands::catalog()?)?;
            Ok(true)
        }
        Command::Tower => {
            let out = commands::tower(cfg)?;
            emit(cfg, &out)?;
            if let Some(p) = &cfg.output {
                let many = out.tables.len() > 1;
                for (k, t) in out.tables.iter().enumerate() {
                    let csv = if many { p.with_extension(format!("B{}.csv", k + 1)) } else { p.with_extension("csv") };
                    write_atomic(&csv, &t.to_csv())?;
                }
            }
            Ok(true)
        }
        Command::Solve => {
            let out = commands::solve(cfg)?;
            emit(cfg, &out)?;
            Ok(out.passed())
        }
        Command::Verify => {
            let rep = verify::run(cfg, cfg.seed.unwrap_or(20))?;
            emit(cfg, &rep)?;
            Ok(rep.ok())
        }
        Command::Zeta => {
            let rep = commands::zeta()?;
            emit(cfg, &rep)?;
            Ok(rep.iter().all(|c| c.holds))
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = load(&args).and_then(|cfg| run(&cfg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
