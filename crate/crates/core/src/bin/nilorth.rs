use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilorth::harness::{exit_code, run, ExperimentConfig, ExperimentKind, RunOptions};
use nilorth::Error;

#[derive(Parser)]
#[command(name = "nilorth", version, about = "Moebius orthogonality experiments on nilmanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write results.json plus the ladder CSV.
    Run(RunArgs),
    /// List the named experiments.
    List,
    /// Parse and check a config without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Describe one experiment and the config keys it reads.
    Describe { experiment: String },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluate assertions (default).
    #[arg(long, overrides_with = "no_assert")]
    assert: bool,
    #[arg(long = "no-assert")]
    no_assert: bool,
}

fn load(path: &Path) -> Result<ExperimentConfig, Error> {
    ExperimentConfig::load(path).map_err(|e| match e {
        Error::Io(io) => Error::Config(format!("{}: {io}", path.display())),
        other => other,
    })
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if matches!(e, Error::ResourceCap(_)) { 3 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for k in ExperimentKind::ALL {
                let first = k.describe().lines().next().unwrap_or_default();
                println!("{:<3} {:<30} {first}", k.short(), k.name());
            }
            ExitCode::SUCCESS
        }
        Command::Describe { experiment } => match ExperimentKind::from_name(&experiment) {
            Some(k) => {
                println!("{} ({})\n{}", k.name(), k.short(), k.describe());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: unknown experiment {experiment:?}; see `nilorth list`");
                ExitCode::from(2)
            }
        },
        Command::Validate { config } => match load(&config).and_then(|c| c.validate().map(|_| c)) {
            Ok(c) => {
                println!("ok: {} ({})", c.experiment, config.display());
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Run(args) => {
            let config = match load(&args.config) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let opts = RunOptions { threads: args.threads, seed: args.seed, assert: !args.no_assert };
            let result = run(&config, &opts);
            let code = exit_code(&result);
            match result {
                Ok(record) => {
                    if let Err(e) = record.write(&args.out, &config.output.json, &config.output.csv) {
                        return fail(&e);
                    }
                    for row in &record.ladders {
                        println!("{}  H={} M={}  A={:.6e}", row.statistic, row.h, row.m, row.value);
                    }
                    for c in &record.checks {
                        println!("[{}] {}  ({})", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
                    }
                    println!(
                        "{}: {} in {:.2} s, wrote {}",
                        record.experiment,
                        if record.passed { "passed" } else { "FAILED" },
                        record.wall_time_s,
                        args.out.display()
                    );
                    ExitCode::from(code as u8)
                }
                Err(e) => fail(&e),
            }
        }
    }
}
