use std::f64::consts::PI;

use crate::grid::{InitialData, Representation};
use crate::integrate::Method;
use crate::scheme::LScaling;
use crate::{Error, Result};

use super::RunSpec;

/// What a preset computes after its runs finish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    /// One interface run; reports the reflected fraction.
    Bounce,
    /// Pairs of runs at `N` and `2N`; reports the convergence index.
    Convergence,
    /// Long runs against the reference; reports errors.
    Accuracy,
    /// Norm histories.
    Norm,
    /// Dissipation sweep; reports errors and norm decay.
    Dissipation,
    /// Only the reference run, all sample states written.
    Reference,
}

/// Size class of a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    /// Wave number 10π, envelope denominator 0.05, `N` ten times smaller,
    /// times ten times longer.
    Ci,
}

/// A preset expanded into concrete runs.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetPlan {
    pub name: String,
    pub kind: PresetKind,
    pub scale: Scale,
    pub description: String,
    pub reference: Option<RunSpec>,
    pub runs: Vec<RunSpec>,
    /// `[lo, hi]` window for the reflected fraction.
    pub reflection_window: (f64, f64),
    /// Convergence pairs: `(coarse label, fine label, name)`.
    pub pairs: Vec<(String, String, String)>,
}

pub const PRESET_NAMES: [&str; 8] = [
    "rk4-bounce",
    "rk4-bounce-strong",
    "imex-cross",
    "convergence",
    "accuracy",
    "norm",
    "dissipation",
    "reference",
];

pub const LENGTH: f64 = 2.0;
/// Dissipation strengths swept by the `dissipation` preset.
pub const EPSILON_SWEEP: [f64; 4] = [0.0, 0.05, 0.1, 0.2];
/// Dissipation strength used where a single "moderate" value is shown.
pub const MODERATE_EPSILON: f64 = 0.1;
/// CFL factor of the `norm` preset. The explicit part of the IMEX scheme
/// loses `|y|⁴/12` per step on a mode with `y = dt·k²`; at 0.25 that alone
/// exceeds the conservation budget over the run.
pub const NORM_CFL: f64 = 0.015;
/// CFL factor of the IMEX runs compared against a reference (`convergence-ci`,
/// `accuracy`, `dissipation`). With `L·dt ≫ 1` the implicit stages lose
/// order, and at 0.25 the time error caps the convergence index near 2.
pub const ACCURACY_CFL: f64 = 0.04;
/// CFL factor of the full-scale `convergence` runs. `L·dt` does not depend on
/// the grid, but the spatial error at full scale is far smaller, so the time
/// error needs a smaller step to stay below it.
pub const CONVERGENCE_CFL_FULL: f64 = 0.02;
/// RK4 needs `dt·2L` inside its stability interval; `L = 10³dx⁻²` forces a
/// CFL factor below `2.83/2000`.
pub const STRONG_L_CFL: f64 = 1e-3;

/// The packet used at the given scale: the literal broad envelope at full
/// scale, a localised one for CI.
pub fn initial_data(scale: Scale) -> InitialData<f64> {
    match scale {
        Scale::Full => InitialData::default(),
        Scale::Ci => InitialData {
            envelope_denominator: 0.05,
            wave_number: 10.0 * PI,
            ..InitialData::default()
        },
    }
}

/// Splits `rk4-bounce-ci` into `("rk4-bounce", Ci)`.
pub fn parse_name(name: &str) -> Result<(&'static str, Scale)> {
    let (base, scale) = match name.strip_suffix("-ci") {
        Some(b) => (b, Scale::Ci),
        None => (name, Scale::Full),
    };
    PRESET_NAMES
        .iter()
        .find(|&&p| p == base)
        .map(|&p| (p, scale))
        .ok_or_else(|| {
            Error::Config(format!(
                "unknown preset '{name}'; known presets: {} (append -ci for the scaled variant)",
                PRESET_NAMES.join(", ")
            ))
        })
}

struct Base {
    n: usize,
    convergence_cfl: f64,
    short: f64,
    long: f64,
    initial: InitialData<f64>,
}

impl Base {
    fn new(scale: Scale) -> Self {
        match scale {
            Scale::Full => Self {
                n: 2000,
                convergence_cfl: CONVERGENCE_CFL_FULL,
                short: 0.004,
                long: 0.04,
                initial: initial_data(scale),
            },
            Scale::Ci => Self {
                n: 200,
                convergence_cfl: ACCURACY_CFL,
                short: 0.04,
                long: 0.4,
                initial: initial_data(scale),
            },
        }
    }

    fn interface(&self, label: &str, n: usize, method: Method, l: LScaling<f64>, t: f64) -> RunSpec {
        RunSpec {
            label: label.to_string(),
            length: LENGTH,
            n,
            representation: Representation::Interface,
            order: 8,
            method,
            l_scaling: l,
            epsilon: 0.0,
            cfl: 0.25,
            t_final: t,
            samples: 100,
            initial: self.initial,
        }
    }

    fn periodic(&self, label: &str, n: usize, order: usize, t: f64) -> RunSpec {
        RunSpec {
            label: label.to_string(),
            length: LENGTH,
            n,
            representation: Representation::Periodic,
            order,
            method: Method::Rk4,
            l_scaling: LScaling::ExplicitBound,
            epsilon: 0.0,
            cfl: 0.25,
            t_final: t,
            samples: 100,
            initial: self.initial,
        }
    }

    fn reference(&self, t: f64) -> RunSpec {
        self.periodic("reference", 4 * self.n, 8, t)
    }
}

pub fn l_power(exponent: i32) -> LScaling<f64> {
    LScaling::Power {
        coeff: 1e3,
        exponent,
    }
}

/// Expands a preset name (with optional `-ci` suffix).
pub fn plan(name: &str) -> Result<PresetPlan> {
    let (base_name, scale) = parse_name(name)?;
    let b = Base::new(scale);
    let n = b.n;
    let window = (0.6 * LENGTH, 0.9 * LENGTH);
    let mut pairs = Vec::new();
    let (kind, description, reference, runs) = match base_name {
        "rk4-bounce" => (
            PresetKind::Bounce,
            "RK4, interaction factor at the explicit bound 1/(σ_0 dx²)",
            None,
            vec![b.interface("interface", n, Method::Rk4, LScaling::ExplicitBound, b.short)],
        ),
        "rk4-bounce-strong" => {
            let mut r = b.interface("interface", n, Method::Rk4, l_power(2), b.short);
            r.cfl = STRONG_L_CFL;
            (
                PresetKind::Bounce,
                "RK4 with L = 10³dx⁻² and a CFL factor small enough for the penalty",
                None,
                vec![r],
            )
        }
        "imex-cross" => (
            PresetKind::Bounce,
            "IMEX-SSP3(4,3,3) with L = 10³dx⁻²",
            None,
            vec![b.interface("interface", n, Method::Imex, l_power(2), b.short)],
        ),
        "convergence" => {
            let mut runs = Vec::new();
            for (exp, tag) in [(2, "l2"), (3, "l3")] {
                let coarse = format!("{tag}-n{n}");
                let fine = format!("{tag}-n{}", 2 * n);
                for (label, nn) in [(&coarse, n), (&fine, 2 * n)] {
                    let mut r = b.interface(label, nn, Method::Imex, l_power(exp), b.short);
                    r.cfl = b.convergence_cfl;
                    runs.push(r);
                }
                pairs.push((coarse, fine, format!("q-{tag}")));
            }
            (
                PresetKind::Convergence,
                "IMEX runs at N and 2N for L = 10³dx⁻² and L = 10³dx⁻³ against the periodic reference",
                Some(b.reference(b.short)),
                runs,
            )
        }
        "accuracy" => {
            let long = |label: String, nn: usize, eps: f64| {
                let mut r = b.interface(&label, nn, Method::Imex, l_power(3), b.long);
                r.cfl = ACCURACY_CFL;
                r.epsilon = eps;
                r
            };
            (
                PresetKind::Accuracy,
                "long runs with L = 10³dx⁻³: interface order 8 at N and 2N, periodic orders 6 and 8 at N",
                Some(b.reference(b.long)),
                vec![
                    long(format!("interface-8-n{n}"), n, 0.0),
                    long(format!("interface-8-n{}", 2 * n), 2 * n, 0.0),
                    b.periodic(&format!("periodic-6-n{n}"), n, 6, b.long),
                    b.periodic(&format!("periodic-8-n{n}"), n, 8, b.long),
                    long(format!("interface-8-n{n}-diss"), n, MODERATE_EPSILON),
                ],
            )
        }
        "norm" => {
            let mk = |label: &str, nn: usize, order: usize, eps: f64| {
                let mut r = b.interface(label, nn, Method::Imex, l_power(2), b.short);
                r.order = order;
                r.epsilon = eps;
                r.cfl = NORM_CFL;
                r
            };
            (
                PresetKind::Norm,
                "IMEX norm histories: orders 8 and 2, a finer grid, and dissipation",
                None,
                vec![
                    mk(&format!("interface-8-n{n}"), n, 8, 0.0),
                    mk(&format!("interface-2-n{n}"), n, 2, 0.0),
                    mk(&format!("interface-8-n{}", 2 * n), 2 * n, 8, 0.0),
                    mk(&format!("interface-8-n{n}-diss"), n, 8, MODERATE_EPSILON),
                ],
            )
        }
        "dissipation" => {
            let runs = EPSILON_SWEEP
                .iter()
                .map(|&eps| {
                    let mut r = b.interface(&format!("eps-{eps}"), n, Method::Imex, l_power(3), b.long);
                    r.epsilon = eps;
                    r.cfl = ACCURACY_CFL;
                    r
                })
                .collect();
            (
                PresetKind::Dissipation,
                "long IMEX runs with L = 10³dx⁻³ and Kreiss-Oliger strengths 0, 0.05, 0.1, 0.2",
                Some(b.reference(b.long)),
                runs,
            )
        }
        "reference" => (
            PresetKind::Reference,
            "periodic order-8 reference solution, every sample state written",
            None,
            vec![b.reference(b.short)],
        ),
        _ => unreachable!(),
    };
    Ok(PresetPlan {
        name: name.to_string(),
        kind,
        scale,
        description: description.to_string(),
        reference,
        runs,
        reflection_window: window,
        pairs,
    })
}
