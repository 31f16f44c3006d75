//! Files written for a preset.
//!
//! ```text
//! <out>/manifest.txt          resolved configuration and metrics
//! <out>/<derived>.csv         e.g. q-l2.csv, occupancy.csv
//! <out>/<label>/norm_sigma.csv
//! <out>/<label>/norm_trapezoid.csv
//! <out>/<label>/occupancy.csv
//! <out>/<label>/error.csv     when compared against a reference
//! <out>/<label>/final.csv     snapshot
//! <out>/reference/state-NNNN.csv
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::grid::WaveFunction;
use crate::{Error, Result};

use super::snapshot::{read_snapshot, write_snapshot};
use super::{Overrides, PresetReport, RunResult};

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Manifest text: the overrides (always including the preset name), then
/// every resolved run and the metrics. Feeding it back as a config file
/// reproduces the runs.
pub fn manifest_text(report: &PresetReport, overrides: &Overrides) -> String {
    let mut o = overrides.clone();
    o.preset = Some(report.plan.name.clone());
    let mut s = String::new();
    let _ = writeln!(s, "# {}", report.plan.description);
    for (k, v) in o.to_lines() {
        let _ = writeln!(s, "{k} = {v}");
    }
    if let Some(spec) = &report.plan.reference {
        for (k, v) in spec.manifest_lines("reference.") {
            let _ = writeln!(s, "{k} = {v}");
        }
    }
    for r in &report.runs {
        for (k, v) in r.spec.manifest_lines(&format!("run.{}.", r.spec.label)) {
            let _ = writeln!(s, "{k} = {v}");
        }
        if let Some(l) = r.interaction {
            let _ = writeln!(s, "run.{}.interaction_value = {:e}{:+e}i", r.spec.label, l.re, l.im);
        }
    }
    for (k, v) in &report.metrics {
        let _ = writeln!(s, "metric.{k} = {v:e}");
    }
    s
}

fn write_run(run: &RunResult, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    run.sigma_norm.write_csv(&dir.join("norm_sigma.csv"))?;
    run.trapezoid_norm.write_csv(&dir.join("norm_trapezoid.csv"))?;
    run.occupancy.write_csv(&dir.join("occupancy.csv"))?;
    if let Some(e) = &run.error {
        e.write_csv(&dir.join("error.csv"))?;
    }
    write_snapshot(&run.final_state, run.spec.t_final, &dir.join("final.csv"))
}

/// Writes everything for `report` below `dir`. Returns the manifest path.
pub fn write_report(report: &PresetReport, dir: &Path, overrides: &Overrides) -> Result<PathBuf> {
    create_dir(dir)?;
    for run in &report.runs {
        write_run(run, &dir.join(&run.spec.label))?;
    }
    for (name, series) in &report.derived {
        series.write_csv(&dir.join(format!("{name}.csv")))?;
    }
    if let Some(r) = &report.reference {
        write_reference(r, &dir.join("reference"))?;
    }
    let manifest = dir.join("manifest.txt");
    write_text(&manifest, &manifest_text(report, overrides))?;
    Ok(manifest)
}

/// Writes every recorded sample state of `run` as `state-NNNN.csv`.
pub fn write_reference(run: &RunResult, dir: &Path) -> Result<()> {
    create_dir(dir)?;
    if run.states.is_empty() {
        return Err(Error::Mismatch(format!(
            "run '{}' kept no sample states to write",
            run.spec.label
        )));
    }
    let times = run.sigma_norm.times();
    for (i, u) in run.states.iter().enumerate() {
        write_snapshot(u, times[i], &dir.join(format!("state-{i:04}.csv")))?;
    }
    Ok(())
}

/// Reads the states written by [`write_reference`], in sample order.
pub fn read_reference(dir: &Path) -> Result<Vec<WaveFunction<f64>>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(format!("reading {}", dir.display()), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let p = entry.map_err(|e| Error::io(format!("reading {}", dir.display()), e))?.path();
        let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if name.starts_with("state-") && name.ends_with(".csv") {
            paths.push(p);
        }
    }
    if paths.is_empty() {
        return Err(Error::Config(format!("{} holds no state-*.csv files", dir.display())));
    }
    paths.sort();
    paths.iter().map(|p| read_snapshot(p).map(|s| s.state)).collect()
}
