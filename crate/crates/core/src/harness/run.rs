use num_complex::Complex;

use crate::diagnostics::{
    error_vs_reference, interface_occupancy, sigma_norm, trapezoid_norm, TimeSeries,
};
use crate::grid::{GridCircle, InitialData, Representation, WaveFunction};
use crate::integrate::{evolve, Method, SemiDiscrete, StepPolicy};
use crate::sbp::{PeriodicStencil, SbpOperator};
use crate::scheme::{InterfaceScheme, LScaling, PeriodicScheme, SchemeConfig};
use crate::{Error, Result};

/// One fully resolved evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub label: String,
    pub length: f64,
    pub n: usize,
    pub representation: Representation,
    pub order: usize,
    pub method: Method,
    pub l_scaling: LScaling<f64>,
    pub epsilon: f64,
    pub cfl: f64,
    pub t_final: f64,
    pub samples: usize,
    pub initial: InitialData<f64>,
}

impl RunSpec {
    pub fn grid(&self) -> Result<GridCircle<f64>> {
        GridCircle::new(self.length, self.n)
    }

    pub fn dt(&self) -> Result<f64> {
        Ok(StepPolicy::new(self.cfl)?.dt(&self.grid()?))
    }

    /// `key = value` lines, each key prefixed with `prefix`.
    pub fn manifest_lines(&self, prefix: &str) -> Vec<(String, String)> {
        let l = match self.l_scaling {
            LScaling::ExplicitBound => "explicit-bound".to_string(),
            LScaling::Power { coeff, exponent } => format!("{coeff:e}*dx^-{exponent}"),
            LScaling::Fixed(l) => format!("{:e}{:+e}i", l.re, l.im),
        };
        let kv = |k: &str, v: String| (format!("{prefix}{k}"), v);
        let mut out = vec![
            kv("representation", self.representation.to_string()),
            kv("length", format!("{:e}", self.length)),
            kv("n", self.n.to_string()),
            kv("order", self.order.to_string()),
            kv("integrator", self.method.to_string()),
        ];
        if self.representation == Representation::Interface {
            out.push(kv("interaction", l));
        }
        out.extend([
            kv("epsilon", format!("{:e}", self.epsilon)),
            kv("cfl", format!("{:e}", self.cfl)),
            kv("dt", self.dt().map(|d| format!("{d:e}")).unwrap_or_default()),
            kv("t_final", format!("{:e}", self.t_final)),
            kv("samples", self.samples.to_string()),
            kv("envelope_center", format!("{:e}", self.initial.envelope_center)),
            kv("envelope_denominator", format!("{:e}", self.initial.envelope_denominator)),
            kv("wave_number", format!("{:e}", self.initial.wave_number)),
            kv(
                "amplitude",
                format!("{:e}{:+e}i", self.initial.amplitude.re, self.initial.amplitude.im),
            ),
        ]);
        out
    }
}

/// Everything recorded during one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub spec: RunSpec,
    pub steps: usize,
    pub dt: f64,
    /// Resolved interaction factor (interface runs only).
    pub interaction: Option<Complex<f64>>,
    /// Conserved norm of the scheme: σ-norm for interface runs, plain
    /// `dx`-weighted norm for periodic runs.
    pub sigma_norm: TimeSeries<f64>,
    pub trapezoid_norm: TimeSeries<f64>,
    /// Fraction of `|u|²` near the interface point.
    pub occupancy: TimeSeries<f64>,
    pub error: Option<TimeSeries<f64>>,
    /// States at the sample times, when requested.
    pub states: Vec<WaveFunction<f64>>,
    pub final_state: WaveFunction<f64>,
}

/// Radius of the interface neighbourhood used for the crossing window, as a
/// fraction of the circle length.
pub const OCCUPANCY_RADIUS: f64 = 0.125;

enum Built {
    Interface(InterfaceScheme<f64>),
    Periodic(PeriodicScheme<f64>),
}

impl Built {
    fn system(&self) -> &dyn SemiDiscrete<f64> {
        match self {
            Built::Interface(s) => s,
            Built::Periodic(s) => s,
        }
    }
}

fn build(spec: &RunSpec, grid: GridCircle<f64>) -> Result<Built> {
    let cfg = SchemeConfig::default()
        .with_l(spec.l_scaling)
        .with_epsilon(spec.epsilon);
    Ok(match spec.representation {
        Representation::Interface => {
            Built::Interface(InterfaceScheme::new(SbpOperator::new(spec.order)?, grid, cfg)?)
        }
        Representation::Periodic => {
            if spec.method == Method::Imex {
                return Err(Error::Config(
                    "periodic runs have no penalty term; use the rk4 integrator".into(),
                ));
            }
            Built::Periodic(PeriodicScheme::new(PeriodicStencil::new(spec.order)?, grid, cfg)?)
        }
    })
}

/// Runs `spec`. With a reference (states at the same sample times on a
/// nested grid) the error series is recorded as well.
pub fn execute(
    spec: &RunSpec,
    reference: Option<&[WaveFunction<f64>]>,
    keep_states: bool,
) -> Result<RunResult> {
    let grid = spec.grid()?;
    let dt = spec.dt()?;
    let built = build(spec, grid)?;
    let sys = built.system();
    let interaction = match &built {
        Built::Interface(s) => Some(s.interaction_factor()),
        Built::Periodic(_) => None,
    };
    let op = match &built {
        Built::Interface(s) => Some(s.operator().clone()),
        Built::Periodic(_) => None,
    };

    let u0 = spec.initial.sample(&grid, spec.representation);
    let mut values = u0.values().to_vec();
    let mut sigma = TimeSeries::new();
    let mut trap = TimeSeries::new();
    let mut occ = TimeSeries::new();
    let mut error = reference.map(|_| TimeSeries::new());
    let mut states = Vec::new();
    let radius = OCCUPANCY_RADIUS * spec.length;

    let stats = evolve(sys, spec.method, &mut values, spec.t_final, dt, spec.samples, |i, t, v| {
        let u = WaveFunction::new(grid, spec.representation, v.to_vec())?;
        let tn = trapezoid_norm(&u);
        let sn = match &op {
            Some(op) => sigma_norm(op, &u)?,
            None => tn,
        };
        sigma.push(t, sn)?;
        trap.push(t, tn)?;
        occ.push(t, interface_occupancy(&u, radius))?;
        if let (Some(refs), Some(err)) = (reference, error.as_mut()) {
            let r = refs.get(i).ok_or_else(|| {
                Error::Mismatch(format!("reference has no state for sample {i} (t = {t:e})"))
            })?;
            err.push(t, error_vs_reference(&u, r)?)?;
        }
        if keep_states {
            states.push(u);
        }
        Ok(())
    })?;
    if let Some(refs) = reference {
        if refs.len() != stats.samples + 1 {
            return Err(Error::Mismatch(format!(
                "reference has {} samples, run '{}' produced {}",
                refs.len(),
                spec.label,
                stats.samples + 1
            )));
        }
    }
    Ok(RunResult {
        spec: spec.clone(),
        steps: stats.steps,
        dt,
        interaction,
        sigma_norm: sigma,
        trapezoid_norm: trap,
        occupancy: occ,
        error,
        states,
        final_state: WaveFunction::new(grid, spec.representation, values)?,
    })
}
