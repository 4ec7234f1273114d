//! `(N_axes, ε_T)` sweeps over a target set.
//!
//! Targets in a row are compiled in parallel; results are collected and
//! averaged in dataset order so rows are reproducible apart from timing.

use rayon::prelude::*;
use serde::Serialize;

use selfnav_core::{allowed_axes, sn_compile, CompileError, CompileReport, CompiledGate, SnConfig, Su2Error};

use crate::dataset::EvalTarget;

pub const DEFAULT_AXES: [usize; 4] = [6, 10, 18, 34];

pub type GateOutcome = Result<(CompiledGate, CompileReport), CompileError>;

/// Aggregates for one `(n_axes, eps_target)` point. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n_axes: usize,
    pub eps_target: f64,
    pub eps_mean: f64,
    pub dist_mean: f64,
    pub pulses_mean: f64,
    pub time_mean_s: f64,
    pub failures: usize,
}

/// `10^{-first}, …, 10^{-last}`, parsed from decimal literals so the values are
/// the nearest doubles to the exact powers.
pub fn eps_decades(first: u32, last: u32) -> Vec<f64> {
    (first..=last).map(|k| format!("1e-{k}").parse().expect("valid literal")).collect()
}

/// `1e-1 … 1e-8`.
pub fn default_eps_list() -> Vec<f64> {
    eps_decades(1, 8)
}

/// Compile every target for one grid point. Output order follows `dataset`.
pub fn compile_dataset(n_axes: usize, eps_target: f64, dataset: &[EvalTarget]) -> Result<Vec<GateOutcome>, Su2Error> {
    let axes = allowed_axes(n_axes)?;
    let config = SnConfig::with_target(eps_target);
    config.validate()?;
    Ok(dataset.par_iter().map(|t| sn_compile(&t.unitary, &axes, &config)).collect())
}

/// Mean metrics over successful compilations; failures are only counted.
pub fn aggregate(n_axes: usize, eps_target: f64, outcomes: &[GateOutcome]) -> SweepRow {
    let ok: Vec<&CompiledGate> = outcomes.iter().filter_map(|o| o.as_ref().ok().map(|(g, _)| g)).collect();
    let n = ok.len() as f64;
    let mean = |f: &dyn Fn(&CompiledGate) -> f64| ok.iter().map(|g| f(g)).sum::<f64>() / n;
    SweepRow {
        n_axes,
        eps_target,
        eps_mean: mean(&|g| g.epsilon),
        dist_mean: mean(&|g| g.distance),
        pulses_mean: mean(&|g| g.pulse_count as f64),
        time_mean_s: mean(&|g| g.compile_time),
        failures: outcomes.len() - ok.len(),
    }
}

/// One row per `(n_axes, eps_target)`, axes-major.
pub fn run_sweep(axes_list: &[usize], eps_list: &[f64], dataset: &[EvalTarget]) -> Result<Vec<SweepRow>, Su2Error> {
    if axes_list.is_empty() || eps_list.is_empty() {
        return Err(Su2Error::InvalidConfiguration("sweep needs at least one axis count and one target".into()));
    }
    let mut rows = Vec::with_capacity(axes_list.len() * eps_list.len());
    for &n_axes in axes_list {
        for &eps in eps_list {
            let outcomes = compile_dataset(n_axes, eps, dataset)?;
            rows.push(aggregate(n_axes, eps, &outcomes));
        }
    }
    Ok(rows)
}
