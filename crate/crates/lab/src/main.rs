use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use fraclap_lab::{parse_config, write_report, ExperimentKind, LabError, Registry};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    KernelCheck,
    MollifierCheck,
    Solve,
    Consistency,
    Rates,
}

impl Command {
    fn kind(self) -> ExperimentKind {
        match self {
            Command::KernelCheck => ExperimentKind::KernelCheck,
            Command::MollifierCheck => ExperimentKind::MollifierCheck,
            Command::Solve => ExperimentKind::Solve,
            Command::Consistency => ExperimentKind::Consistency,
            Command::Rates => ExperimentKind::Rates,
        }
    }
}

/// Fractional Dirichlet problem experiments.
#[derive(Debug, Parser)]
#[command(name = "fraclap", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Configuration file of `key = value` lines.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir` from the file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized suites; overrides `seed` from the file.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    verbose: bool,
}

fn run(cli: &Cli) -> Result<bool, LabError> {
    let mut cfg = parse_config(&cli.config)?;
    if cfg.experiment != cli.command.kind() {
        return Err(LabError::Config(format!(
            "config is for `{}` but the subcommand is `{}`",
            cfg.experiment.name(),
            cli.command.kind().name()
        )));
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let report = Registry::builtin().run(&cfg)?;
    for path in write_report(report.as_ref(), &cfg.output_dir)? {
        log::info!("wrote {}", path.display());
    }
    println!("{}", report.summary());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
