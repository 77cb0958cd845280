//! Reproducible scenarios over the other modules.
//!
//! A run reads a [`ScenarioConfig`], computes a [`ScenarioReport`] and writes
//! `report.json`, one CSV per table and `plotdata/*.csv`. All randomness comes
//! from the config seed and CSV bodies use a fixed 17-digit float format, so
//! the same config gives the same bytes.

mod config;
mod report;
mod scenarios;
mod sign;

use std::path::Path;
use std::time::Instant;

pub use config::{Scenario, ScenarioConfig, Tolerances};
pub use report::{Cell, Check, PlotSeries, ScenarioReport, Table, Timings};
pub use sign::{dilate_half_grid, sign_retrieval_check, Dilated, SignVerdict, MAX_SIGN_WINDOW};

use crate::{Error, Result};

/// Computes the report without touching the filesystem.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    config.validate()?;
    let start = Instant::now();
    let out = match config.scenario {
        Scenario::Classify => scenarios::classify(config),
        Scenario::FrameboundSweep => scenarios::framebound_sweep(config),
        Scenario::CriticalHalf => scenarios::critical_half(config),
        Scenario::KadetsSweep => scenarios::kadets_sweep(config),
        Scenario::DensityDemo => scenarios::density_demo(config),
        Scenario::KernelAsymptotic => scenarios::kernel_asymptotic(config),
        Scenario::G0Estimate => scenarios::g0_estimate(config),
        Scenario::FockConsistency => scenarios::fock_consistency(config),
        Scenario::SignRetrieval => scenarios::sign_retrieval(config),
    }?;
    let passed = out.checks.iter().all(|c| c.passed);
    Ok(ScenarioReport {
        scenario: config.scenario.name().to_string(),
        config: config.clone(),
        summary: out.summary,
        checks: out.checks,
        passed,
        tables: out.tables,
        plots: out.plots,
        timings: Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 },
    })
}

/// Runs, writes the outputs to `dir`, then fails with `ThresholdFailed` if
/// any declared check did not hold.
pub fn run_and_write(config: &ScenarioConfig, dir: &Path) -> Result<ScenarioReport> {
    let report = run_scenario(config)?;
    report.write(dir)?;
    if !report.passed {
        return Err(Error::ThresholdFailed(report.failed_checks()));
    }
    Ok(report)
}

/// Process exit code for a run result: 0 on success, 1 when thresholds
/// failed, 2 for anything else.
pub fn exit_code(result: &Result<ScenarioReport>) -> i32 {
    match result {
        Ok(_) => 0,
        Err(Error::ThresholdFailed(_)) => 1,
        Err(_) => 2,
    }
}
