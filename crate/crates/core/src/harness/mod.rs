//! Experiment presets, configuration files and CSV outputs.
//!
//! A preset expands into a list of [`RunSpec`]s (plus an optional periodic
//! reference run); [`run_preset`] executes them and derives the metrics the
//! preset is about, [`write_report`] puts everything on disk.

mod config;
mod output;
mod presets;
mod run;
mod snapshot;

use rayon::prelude::*;

use crate::diagnostics::{convergence_index, crossing_mask, reflected_fraction, TimeSeries};
use crate::grid::WaveFunction;
use crate::Result;

pub use config::{parse_config, Overrides};
pub use output::{manifest_text, read_reference, write_report, write_reference};
pub use presets::{
    initial_data, l_power, parse_name, plan, PresetKind, PresetPlan, Scale, STRONG_L_CFL,
    ACCURACY_CFL, CONVERGENCE_CFL_FULL, EPSILON_SWEEP, LENGTH, MODERATE_EPSILON, NORM_CFL, PRESET_NAMES,
};
pub use run::{execute, RunResult, RunSpec, OCCUPANCY_RADIUS};
pub use snapshot::{read_snapshot, read_snapshot_expect, snapshot_to_string, write_snapshot, Snapshot};

/// Occupancy, relative to its peak, above which a sample counts as
/// "crossing the interface".
pub const CROSSING_RATIO: f64 = 0.5;
/// Occupancy, relative to its peak, below which a sample counts as "far
/// from the interface".
pub const FAR_RATIO: f64 = 0.1;

/// Results of a preset.
#[derive(Debug, Clone)]
pub struct PresetReport {
    pub plan: PresetPlan,
    pub reference: Option<RunResult>,
    pub runs: Vec<RunResult>,
    /// Derived series such as convergence indices.
    pub derived: Vec<(String, TimeSeries<f64>)>,
    /// Scalar results, `name = value`.
    pub metrics: Vec<(String, f64)>,
}

impl PresetReport {
    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn run(&self, label: &str) -> Option<&RunResult> {
        self.runs.iter().find(|r| r.spec.label == label)
    }

    pub fn series(&self, key: &str) -> Option<&TimeSeries<f64>> {
        self.derived.iter().find(|(k, _)| k == key).map(|(_, s)| s)
    }
}

/// Expands and runs a preset. Independent runs execute in parallel; the
/// reference (if any) runs first, or is taken from `reference` when given.
pub fn run_preset(
    name: &str,
    overrides: &Overrides,
    reference: Option<Vec<WaveFunction<f64>>>,
) -> Result<PresetReport> {
    let plan = overrides.apply(plan(name)?)?;
    run_plan(plan, reference)
}

pub fn run_plan(plan: PresetPlan, reference: Option<Vec<WaveFunction<f64>>>) -> Result<PresetReport> {
    let keep_all = plan.kind == PresetKind::Reference;
    let (ref_result, ref_states) = match (&plan.reference, reference) {
        (Some(_), Some(states)) => (None, Some(states)),
        (Some(spec), None) => {
            let r = execute(spec, None, true)?;
            let states = r.states.clone();
            (Some(r), Some(states))
        }
        (None, _) => (None, None),
    };
    let runs: Vec<RunResult> = plan
        .runs
        .par_iter()
        .map(|spec| execute(spec, ref_states.as_deref(), keep_all))
        .collect::<Result<_>>()?;
    let mut report = PresetReport {
        plan,
        reference: ref_result,
        runs,
        derived: Vec::new(),
        metrics: Vec::new(),
    };
    derive_metrics(&mut report)?;
    Ok(report)
}

fn max_abs_rel(series: &TimeSeries<f64>, mask: Option<&[bool]>) -> Option<f64> {
    let v0 = series.values().first().copied().flatten()?;
    series
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask.is_none_or(|m| m[*i]))
        .filter_map(|(_, v)| v.map(|v| (v / v0 - 1.0).abs()))
        .reduce(f64::max)
}

fn derive_metrics(report: &mut PresetReport) -> Result<()> {
    let mut metrics = Vec::new();
    let mut derived = Vec::new();
    for r in &report.runs {
        let l = &r.spec.label;
        let crossing = crossing_mask(&r.occupancy, CROSSING_RATIO);
        let far: Vec<bool> = crossing_mask(&r.occupancy, FAR_RATIO).iter().map(|c| !c).collect();
        if let Some(d) = max_abs_rel(&r.sigma_norm, None) {
            metrics.push((format!("sigma_drift_max.{l}"), d));
        }
        if let Some(d) = max_abs_rel(&r.sigma_norm, Some(&far)) {
            metrics.push((format!("sigma_drift_far.{l}"), d));
        }
        if let Some(d) = max_abs_rel(&r.trapezoid_norm, Some(&crossing)) {
            metrics.push((format!("trapezoid_dev_crossing.{l}"), d));
        }
        if let Some(d) = max_abs_rel(&r.trapezoid_norm, Some(&far)) {
            metrics.push((format!("trapezoid_dev_far.{l}"), d));
        }
        let sig: Vec<f64> = r.sigma_norm.present().map(|(_, v)| v).collect();
        let monotone = sig.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-14));
        metrics.push((format!("sigma_monotone.{l}"), if monotone { 1.0 } else { 0.0 }));
        if let (Some(first), Some(last)) = (sig.first(), sig.last()) {
            metrics.push((format!("sigma_decay.{l}"), 1.0 - last / first));
        }
        if let Some(err) = &r.error {
            if let Some(e) = err.values().last().copied().flatten() {
                metrics.push((format!("final_error.{l}"), e));
            }
            if let Some(e) = err.max_present() {
                metrics.push((format!("max_error.{l}"), e));
            }
        }
        if r.spec.representation == crate::grid::Representation::Interface {
            let f = reflected_fraction(&r.final_state, report.plan.reflection_window)?;
            metrics.push((format!("reflected_fraction.{l}"), f));
        }
        metrics.push((format!("steps.{l}"), r.steps as f64));
    }

    if report.plan.kind == PresetKind::Convergence {
        // the crossing window is defined by the reference solution when
        // available, otherwise by the coarse run
        for (coarse, fine, name) in &report.plan.pairs {
            let (Some(c), Some(f)) = (report.run(coarse), report.run(fine)) else {
                continue;
            };
            let (Some(ec), Some(ef)) = (&c.error, &f.error) else {
                continue;
            };
            let q = convergence_index(ec, ef)?;
            let occ = report.reference.as_ref().map_or(&c.occupancy, |r| &r.occupancy);
            let mask = crossing_mask(occ, CROSSING_RATIO);
            let in_window = q
                .values()
                .iter()
                .zip(&mask)
                .filter_map(|(v, &m)| if m { *v } else { None })
                .reduce(f64::min);
            if let Some(m) = in_window {
                metrics.push((format!("min_q_crossing.{name}"), m));
            }
            if let Some(m) = q.min_present() {
                metrics.push((format!("min_q.{name}"), m));
            }
            derived.push((name.clone(), q));
        }
        let occ = report
            .reference
            .as_ref()
            .map(|r| r.occupancy.clone())
            .or_else(|| report.runs.first().map(|r| r.occupancy.clone()));
        if let Some(occ) = occ {
            derived.push(("occupancy".to_string(), occ));
        }
    }
    report.metrics = metrics;
    report.derived = derived;
    Ok(())
}
