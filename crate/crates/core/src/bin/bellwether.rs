use std::path::PathBuf;
use std::process::ExitCode;

use bellwether::pipeline::{run_stage, AnalysisConfig, Command, PipelineError, Run, SEED_ENV};
use bellwether::Month;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bellwether", version, about = "Labor-market metrics and lead-lag analysis")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and clean the inputs, write a parse report
    Ingest(Args),
    /// Monthly labor metrics per occupation
    Metrics(Args),
    /// GenAI vs non-GenAI cohort comparison
    Cohort(Args),
    /// Granger causality grids and heatmaps
    Granger(Args),
    /// Rolling out-of-sample forecast comparison
    Forecast(Args),
    /// Write a synthetic dataset with a planted lead-lag structure
    Synth(Args),
    /// Collate every stage into one report
    Report(Args),
}

#[derive(clap::Args)]
struct Args {
    /// TOML config; defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default runs/<hash>-<time>)
    #[arg(long, alias = "out")]
    run_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    permutations: Option<usize>,
    #[arg(long)]
    window_start: Option<Month>,
    #[arg(long)]
    window_end: Option<Month>,
}

fn configure(args: &Args) -> Result<AnalysisConfig, PipelineError> {
    let mut config = match &args.config {
        Some(path) => AnalysisConfig::load(path)?,
        None => {
            let mut c = AnalysisConfig::default();
            c.apply_env(std::env::var(SEED_ENV).ok().as_deref())?;
            c
        }
    };
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(p) = args.permutations {
        config.permutations = p;
    }
    if let Some(m) = args.window_start {
        config.window_start = m;
    }
    if let Some(m) = args.window_end {
        config.window_end = m;
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, args) = match &cli.command {
        Cmd::Ingest(a) => (Command::Ingest, a),
        Cmd::Metrics(a) => (Command::Metrics, a),
        Cmd::Cohort(a) => (Command::Cohort, a),
        Cmd::Granger(a) => (Command::Granger, a),
        Cmd::Forecast(a) => (Command::Forecast, a),
        Cmd::Synth(a) => (Command::Synth, a),
        Cmd::Report(a) => (Command::Report, a),
    };
    let result = configure(args)
        .and_then(|config| Run::new(config, args.run_dir.clone()))
        .and_then(|run| run_stage(&run, stage).map(|_| run));
    match result {
        Ok(run) => {
            println!("{} {} -> {}", stage.name(), run.hash, run.dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bellwether {}: {e}", stage.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
