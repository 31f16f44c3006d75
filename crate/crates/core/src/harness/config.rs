use std::path::{Path, PathBuf};

use crate::grid::Representation;
use crate::integrate::Method;
use crate::scheme::LScaling;
use crate::{Error, Result};

use super::PresetPlan;

/// Changes applied on top of a preset, from a config file or CLI flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub preset: Option<String>,
    /// Base grid size; every run of the preset is rescaled by the same
    /// factor.
    pub n: Option<usize>,
    pub order: Option<usize>,
    pub integrator: Option<Method>,
    pub l_coeff: Option<f64>,
    pub l_exponent: Option<i32>,
    pub l_explicit_bound: Option<bool>,
    pub epsilon: Option<f64>,
    pub t_final: Option<f64>,
    pub cfl: Option<f64>,
    pub samples: Option<usize>,
    pub envelope_denominator: Option<f64>,
    pub wave_number: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

macro_rules! take {
    ($self:ident, $other:ident, $($f:ident),*) => {
        $( if $other.$f.is_some() { $self.$f = $other.$f.clone(); } )*
    };
}

impl Overrides {
    /// `other` wins wherever it sets a value.
    pub fn merged(mut self, other: &Overrides) -> Self {
        take!(
            self, other, preset, n, order, integrator, l_coeff, l_exponent, l_explicit_bound, epsilon,
            t_final, cfl, samples, envelope_denominator, wave_number, out_dir
        );
        self
    }

    fn l_scaling(&self) -> Result<Option<LScaling<f64>>> {
        if let Some(e) = self.l_exponent {
            if e != 2 && e != 3 {
                return Err(Error::Config(format!("l-exponent must be 2 or 3, got {e}")));
            }
        }
        if let Some(c) = self.l_coeff {
            if !(c >= 0.0) || !c.is_finite() {
                return Err(Error::Config(format!("l-coeff must be >= 0, got {c}")));
            }
        }
        let power = self.l_coeff.is_some() || self.l_exponent.is_some();
        match (self.l_explicit_bound == Some(true), power) {
            (true, true) => Err(Error::Config(
                "l-explicit-bound cannot be combined with l-coeff/l-exponent".into(),
            )),
            (true, false) => Ok(Some(LScaling::ExplicitBound)),
            (false, true) => Ok(Some(LScaling::Power {
                coeff: self.l_coeff.unwrap_or(1e3),
                exponent: self.l_exponent.unwrap_or(2),
            })),
            (false, false) => Ok(None),
        }
    }

    /// Applies the overrides to every run of `plan`.
    ///
    /// Grid size, dissipation, time, CFL, sampling and initial data apply to
    /// all runs including the reference; order, integrator and interaction
    /// factor only to interface runs.
    pub fn apply(&self, mut plan: PresetPlan) -> Result<PresetPlan> {
        let l = self.l_scaling()?;
        if let Some(o) = self.order {
            crate::sbp::SbpOperator::<f64>::new(o)?;
        }
        let base = plan.runs.iter().map(|r| r.n).min().unwrap_or(1);
        let before: Vec<(usize, usize)> = plan.runs.iter().map(|r| (r.n, r.order)).collect();
        for r in plan.runs.iter_mut().chain(plan.reference.iter_mut()) {
            if let Some(n) = self.n {
                if n == 0 {
                    return Err(Error::Config("n must be positive".into()));
                }
                let scaled = r.n * n;
                if scaled % base != 0 {
                    return Err(Error::Config(format!(
                        "n = {n} does not rescale run '{}' (N = {}) to an integer size",
                        r.label, r.n
                    )));
                }
                r.n = scaled / base;
            }
            if r.representation == Representation::Interface {
                if let Some(o) = self.order {
                    r.order = o;
                }
                if let Some(m) = self.integrator {
                    r.method = m;
                }
                if let Some(l) = l {
                    r.l_scaling = l;
                }
            }
            if let Some(e) = self.epsilon {
                if !(e >= 0.0) || !e.is_finite() {
                    return Err(Error::Config(format!("epsilon must be >= 0, got {e}")));
                }
                if r.label != "reference" {
                    r.epsilon = e;
                }
            }
            if let Some(t) = self.t_final {
                if !(t > 0.0) || !t.is_finite() {
                    return Err(Error::Config(format!("t-final must be positive, got {t}")));
                }
                r.t_final = t;
            }
            if let Some(c) = self.cfl {
                if !(c > 0.0) || !c.is_finite() {
                    return Err(Error::Config(format!("cfl must be positive, got {c}")));
                }
                r.cfl = c;
            }
            if let Some(s) = self.samples {
                if s == 0 {
                    return Err(Error::Config("samples must be positive".into()));
                }
                r.samples = s;
            }
            if let Some(d) = self.envelope_denominator {
                if !(d > 0.0) || !d.is_finite() {
                    return Err(Error::Config(format!("envelope-denominator must be positive, got {d}")));
                }
                r.initial.envelope_denominator = d;
            }
            if let Some(k) = self.wave_number {
                r.initial.wave_number = k;
            }
        }
        relabel(&mut plan, &before)?;
        Ok(plan)
    }

    /// Non-empty settings as `key = value` lines, in config-file syntax.
    pub fn to_lines(&self) -> Vec<(String, String)> {
        let mut v = Vec::new();
        let mut put = |k: &str, s: Option<String>| {
            if let Some(s) = s {
                v.push((k.to_string(), s));
            }
        };
        put("preset", self.preset.clone());
        put("n", self.n.map(|x| x.to_string()));
        put("order", self.order.map(|x| x.to_string()));
        put("integrator", self.integrator.map(|x| x.to_string()));
        put("l-coeff", self.l_coeff.map(|x| format!("{x:e}")));
        put("l-exponent", self.l_exponent.map(|x| x.to_string()));
        put("l-explicit-bound", self.l_explicit_bound.map(|x| x.to_string()));
        put("epsilon", self.epsilon.map(|x| format!("{x:e}")));
        put("t-final", self.t_final.map(|x| format!("{x:e}")));
        put("cfl", self.cfl.map(|x| format!("{x:e}")));
        put("samples", self.samples.map(|x| x.to_string()));
        put("envelope-denominator", self.envelope_denominator.map(|x| format!("{x:e}")));
        put("wave-number", self.wave_number.map(|x| format!("{x:e}")));
        v
    }
}

/// Rewrites the `n<N>` and order tokens of run labels after an override
/// changed them, so labels keep describing their runs.
fn relabel(plan: &mut PresetPlan, before: &[(usize, usize)]) -> Result<()> {
    let mut renames = Vec::new();
    for (r, &(n0, o0)) in plan.runs.iter_mut().zip(before) {
        let interface = r.representation == Representation::Interface;
        let label = r
            .label
            .split('-')
            .map(|tok| {
                if tok == format!("n{n0}") {
                    format!("n{}", r.n)
                } else if interface && tok == o0.to_string() {
                    r.order.to_string()
                } else {
                    tok.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("-");
        renames.push((r.label.clone(), label.clone()));
        r.label = label;
    }
    for (i, a) in plan.runs.iter().enumerate() {
        if plan.runs[..i].iter().any(|b| b.label == a.label) {
            return Err(Error::Config(format!(
                "the overrides make two runs of preset '{}' identical ({})",
                plan.name, a.label
            )));
        }
    }
    let rename = |l: &mut String| {
        if let Some((_, new)) = renames.iter().find(|(old, _)| old == l) {
            *l = new.clone();
        }
    };
    for (c, f, _) in plan.pairs.iter_mut() {
        rename(c);
        rename(f);
    }
    Ok(())
}

fn parse_value<T: std::str::FromStr>(path: &Path, line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        message: format!("invalid value '{value}' for '{key}'"),
    })
}

/// Parses `key = value` lines. `#` starts a comment; keys may use `-` or
/// `_`. Keys under `run.`, `reference.` and `metric.` are written into
/// manifests for information and ignored here.
pub fn parse_config(text: &str, path: &Path) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("expected 'key = value', got '{line}'"),
            });
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if ["run.", "reference.", "metric."].iter().any(|p| key.starts_with(p)) {
            continue;
        }
        match key.as_str() {
            "preset" => o.preset = Some(value.to_string()),
            "n" => o.n = Some(parse_value(path, line_no, &key, value)?),
            "order" => o.order = Some(parse_value(path, line_no, &key, value)?),
            "integrator" => {
                o.integrator = Some(value.parse().map_err(|e: Error| Error::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: e.to_string(),
                })?)
            }
            "l-coeff" => o.l_coeff = Some(parse_value(path, line_no, &key, value)?),
            "l-exponent" => o.l_exponent = Some(parse_value(path, line_no, &key, value)?),
            "l-explicit-bound" => o.l_explicit_bound = Some(parse_value(path, line_no, &key, value)?),
            "epsilon" => o.epsilon = Some(parse_value(path, line_no, &key, value)?),
            "t-final" => o.t_final = Some(parse_value(path, line_no, &key, value)?),
            "cfl" => o.cfl = Some(parse_value(path, line_no, &key, value)?),
            "samples" => o.samples = Some(parse_value(path, line_no, &key, value)?),
            "envelope-denominator" => o.envelope_denominator = Some(parse_value(path, line_no, &key, value)?),
            "wave-number" => o.wave_number = Some(parse_value(path, line_no, &key, value)?),
            "out-dir" => o.out_dir = Some(PathBuf::from(value)),
            other => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    Ok(o)
}
