use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use di_gauss::experiment::{
    bounds_table, build_codebook, load_config, run_experiment, sweep_table, with_workers, ExperimentConfig,
    ExperimentError,
};

#[derive(Parser)]
#[command(name = "di-gauss", version, about = "Deterministic identification codes over Gaussian channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the codebook and emit it as JSON.
    Construct(Common),
    /// Build, simulate every pair and report.
    Simulate(Common),
    /// Bound curves over the config's `bounds` grid.
    Bounds(Common),
    /// Rate–reliability tradeoff over the config's `sweep` grid.
    Sweep(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Args)]
struct Common {
    /// JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set threshold.value=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Write files here instead of printing to stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

struct Sink<'a> {
    dir: Option<&'a Path>,
    stem: String,
}

impl Sink<'_> {
    fn emit(&self, suffix: &str, body: &[u8]) -> Result<(), ExperimentError> {
        match self.dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let path = dir.join(format!("{}{suffix}", self.stem));
                fs::write(&path, body)?;
                eprintln!("wrote {}", path.display());
            }
            None => io::stdout().write_all(body)?,
        }
        Ok(())
    }
}

fn csv_bytes(
    cfg: &ExperimentConfig,
    f: fn(&ExperimentConfig, &mut Vec<u8>) -> Result<(), ExperimentError>,
) -> Result<Vec<u8>, ExperimentError> {
    let mut buf = Vec::new();
    f(cfg, &mut buf)?;
    Ok(buf)
}

fn run(cli: Cli) -> Result<(), ExperimentError> {
    let (Command::Construct(c) | Command::Simulate(c) | Command::Bounds(c) | Command::Sweep(c)) = &cli.command;
    let cfg = load_config(c.config.as_deref(), &c.overrides, c.seed)?;
    if c.format == Format::Both && c.out_dir.is_none() {
        return Err(ExperimentError::Config("--format both needs --out-dir".into()));
    }
    let sink = Sink {
        dir: c.out_dir.as_deref(),
        stem: cfg.stem(),
    };
    match &cli.command {
        Command::Construct(_) => {
            let code = with_workers(c.workers, || build_codebook(&cfg))??;
            sink.emit(".codebook.json", code.to_json().as_bytes())
        }
        Command::Simulate(_) => {
            let report = with_workers(c.workers, || run_experiment(&cfg))??;
            if c.format != Format::Json {
                sink.emit(".csv", report.to_csv().as_bytes())?;
            }
            if c.format != Format::Csv {
                sink.emit(".json", report.to_json().as_bytes())?;
            }
            Ok(())
        }
        Command::Bounds(_) => sink.emit(".bounds.csv", &csv_bytes(&cfg, |c, b| bounds_table(c, b))?),
        Command::Sweep(_) => sink.emit(".sweep.csv", &csv_bytes(&cfg, |c, b| sweep_table(c, b))?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("di-gauss: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
