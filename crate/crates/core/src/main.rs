use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gauss_cis::experiments::{exit_code, run_and_write, Scenario, ScenarioConfig};
use gauss_cis::Error;

/// Run one reproducible scenario and write report.json, CSV tables and plot data.
#[derive(Debug, Parser)]
#[command(name = "gauss-cis", version)]
struct Cli {
    /// classify, framebound-sweep, critical-half, kadets-sweep, density-demo,
    /// kernel-asymptotic, g0-estimate, fock-consistency or sign-retrieval
    scenario: Scenario,
    /// JSON config
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output_dir` in the config)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; output does not depend on it
    #[arg(long)]
    threads: Option<usize>,
}

fn run(cli: &Cli) -> gauss_cis::Result<gauss_cis::experiments::ScenarioReport> {
    let mut config = ScenarioConfig::load(&cli.config)?;
    if config.scenario != cli.scenario {
        return Err(Error::ConfigInvalid(format!(
            "config is for `{}` but `{}` was requested",
            config.scenario, cli.scenario
        )));
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    }
    let out = cli
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(config.scenario.name()));
    run_and_write(&config, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    match &result {
        Ok(r) => {
            for c in &r.checks {
                println!("PASS {} = {} {} {}", c.name, c.value, c.relation, c.threshold);
            }
        }
        Err(Error::ThresholdFailed(names)) => {
            for n in names {
                eprintln!("FAIL {n}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}
