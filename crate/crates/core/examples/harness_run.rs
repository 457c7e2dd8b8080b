// Running a bundled experiment config from code instead of the CLI.

use std::path::Path;

use nilorth::harness::{run, write_ladder_csv, ExperimentConfig, RunOptions};

fn main() -> nilorth::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/e1_circle.toml");
    let config = ExperimentConfig::load(&path)?;
    config.validate()?;
    let record = run(&config, &RunOptions { threads: Some(1), ..RunOptions::default() })?;
    write_ladder_csv(std::io::stdout(), &record.ladders)?;
    for check in &record.checks {
        println!("{} {}: {}", if check.passed { "pass" } else { "FAIL" }, check.name, check.detail);
    }
    println!("config hash {}", record.config_hash);
    Ok(())
}
