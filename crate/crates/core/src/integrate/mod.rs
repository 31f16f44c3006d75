//! Time integration: classical RK4, the IMEX-SSP3(4,3,3) additive scheme with
//! a closed-form implicit penalty solve, the `dt = λ·dx²` policy and the
//! sampled evolution loop.

mod tableau;

use num_complex::Complex;

use crate::grid::{GridCircle, WaveFunction};
use crate::{Error, Real, Result};

pub use tableau::ImexTableau;

/// Right-hand side `du/dt = f(t, u)` on a fixed number of complex unknowns,
/// optionally split into an explicit part and a stiff part that the IMEX
/// stepper treats implicitly.
///
/// The default split is "everything explicit": `stiff_into` writes zeros and
/// `solve_stiff` is the identity.
pub trait SemiDiscrete<T: Real>: Sync {
    fn dim(&self) -> usize;

    fn rhs_into(&self, t: T, u: &[Complex<T>], out: &mut [Complex<T>]);

    fn explicit_into(&self, t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
        self.rhs_into(t, u, out);
    }

    fn stiff_into(&self, _t: T, _u: &[Complex<T>], out: &mut [Complex<T>]) {
        out.iter_mut().for_each(|z| *z = Complex::new(T::zero(), T::zero()));
    }

    /// Overwrites `v` with the solution `w` of `w = v + coeff·stiff(t, w)`.
    fn solve_stiff(&self, _t: T, _coeff: T, _v: &mut [Complex<T>]) {}

    /// Short description of the stiff coupling, used in instability reports.
    fn interaction_label(&self) -> String {
        "none".to_string()
    }
}

/// Closed-form solution of the implicit penalty stage
/// `(v0, vN) = (u0, uN) + coeff·(−iL(v0−vN), +iL(v0−vN))`.
///
/// The sum `v0+vN` is unchanged and the difference is divided by
/// `1 + 2i·coeff·L`.
pub fn penalty_solve<T: Real>(
    l: Complex<T>,
    coeff: T,
    u0: Complex<T>,
    un: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let two = T::lit(2.0);
    let denom = Complex::new(T::one(), T::zero()) + Complex::new(T::zero(), two * coeff) * l;
    debug_assert!(denom.norm_sqr() > T::zero(), "singular penalty solve");
    let s = u0 + un;
    let d = (u0 - un) / denom;
    ((s + d) / two, (s - d) / two)
}

/// Time-step rule `dt = λ·dx²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy<T> {
    pub cfl: T,
}

impl<T: Real> Default for StepPolicy<T> {
    fn default() -> Self {
        Self { cfl: T::lit(0.25) }
    }
}

impl<T: Real> StepPolicy<T> {
    pub fn new(cfl: T) -> Result<Self> {
        if !(cfl > T::zero()) || !cfl.is_finite() {
            return Err(Error::Config(format!("CFL factor must be positive, got {cfl}")));
        }
        Ok(Self { cfl })
    }

    pub fn dt(&self, grid: &GridCircle<T>) -> T {
        self.cfl * grid.dx() * grid.dx()
    }
}

/// Which integrator advances the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Rk4,
    Imex,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::Imex => "imex",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rk4" => Ok(Method::Rk4),
            "imex" | "imex-ssp3" => Ok(Method::Imex),
            other => Err(Error::Config(format!(
                "unknown integrator '{other}'; expected rk4 or imex"
            ))),
        }
    }
}

fn zeros<T: Real>(n: usize) -> Vec<Complex<T>> {
    vec![Complex::new(T::zero(), T::zero()); n]
}

#[inline]
fn axpy<T: Real>(out: &mut [Complex<T>], a: T, x: &[Complex<T>]) {
    for (o, z) in out.iter_mut().zip(x) {
        o.re += a * z.re;
        o.im += a * z.im;
    }
}

fn all_finite<T: Real>(u: &[Complex<T>]) -> bool {
    u.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Classical RK4 with reusable stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4<T> {
    k: [Vec<Complex<T>>; 4],
    tmp: Vec<Complex<T>>,
}

impl<T: Real> Rk4<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            k: [zeros(dim), zeros(dim), zeros(dim), zeros(dim)],
            tmp: zeros(dim),
        }
    }

    /// Advances `u` from `t` to `t + dt`. Leaves `u` untouched and reports
    /// an instability if any stage produced a non-finite value.
    pub fn step<S: SemiDiscrete<T> + ?Sized>(
        &mut self,
        sys: &S,
        u: &mut [Complex<T>],
        t: T,
        dt: T,
    ) -> Result<()> {
        let half = dt / T::lit(2.0);
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;

        sys.rhs_into(t, u, k1);
        tmp.copy_from_slice(u);
        axpy(tmp, half, k1);
        sys.rhs_into(t + half, tmp, k2);
        tmp.copy_from_slice(u);
        axpy(tmp, half, k2);
        sys.rhs_into(t + half, tmp, k3);
        tmp.copy_from_slice(u);
        axpy(tmp, dt, k3);
        sys.rhs_into(t + dt, tmp, k4);

        let sixth = dt / T::lit(6.0);
        let third = dt / T::lit(3.0);
        for i in 0..tmp.len() {
            tmp[i] = u[i] + k1[i] * sixth + (k2[i] + k3[i]) * third + k4[i] * sixth;
        }
        if !all_finite(tmp) {
            return Err(instability(sys, 0, t, dt));
        }
        u.copy_from_slice(tmp);
        Ok(())
    }
}

fn instability<T: Real, S: SemiDiscrete<T> + ?Sized>(sys: &S, step: usize, t: T, dt: T) -> Error {
    Error::Instability {
        step,
        time: t.to_f64_lossy(),
        dt: dt.to_f64_lossy(),
        interaction: sys.interaction_label(),
    }
}

/// Additive IMEX Runge-Kutta stepper: explicit part with the explicit table,
/// stiff part with the diagonally implicit table, shared weights.
#[derive(Debug, Clone)]
pub struct Imex<T> {
    tableau: ImexTableau<T>,
    explicit: Vec<Vec<Complex<T>>>,
    implicit: Vec<Vec<Complex<T>>>,
    stage: Vec<Complex<T>>,
    /// Stages whose explicit evaluation is never used.
    skip_explicit: Vec<bool>,
}

impl<T: Real> Imex<T> {
    pub fn new(tableau: ImexTableau<T>, dim: usize) -> Self {
        let s = tableau.stages();
        let skip_explicit = (0..s)
            .map(|j| {
                tableau.weights[j] == T::zero()
                    && (j + 1..s).all(|i| tableau.explicit[i][j] == T::zero())
            })
            .collect();
        Self {
            explicit: (0..s).map(|_| zeros(dim)).collect(),
            implicit: (0..s).map(|_| zeros(dim)).collect(),
            stage: zeros(dim),
            skip_explicit,
            tableau,
        }
    }

    pub fn tableau(&self) -> &ImexTableau<T> {
        &self.tableau
    }

    pub fn step<S: SemiDiscrete<T> + ?Sized>(
        &mut self,
        sys: &S,
        u: &mut [Complex<T>],
        t: T,
        dt: T,
    ) -> Result<()> {
        let tab = &self.tableau;
        let s = tab.stages();
        for i in 0..s {
            let stage = &mut self.stage;
            stage.copy_from_slice(u);
            for j in 0..i {
                let ae = tab.explicit[i][j];
                if ae != T::zero() {
                    axpy(stage, dt * ae, &self.explicit[j]);
                }
                let ai = tab.implicit[i][j];
                if ai != T::zero() {
                    axpy(stage, dt * ai, &self.implicit[j]);
                }
            }
            let aii = tab.implicit[i][i];
            sys.solve_stiff(t + tab.c_implicit[i] * dt, dt * aii, stage);
            sys.stiff_into(t + tab.c_implicit[i] * dt, stage, &mut self.implicit[i]);
            if !self.skip_explicit[i] {
                sys.explicit_into(t + tab.c_explicit[i] * dt, stage, &mut self.explicit[i]);
            }
        }
        let stage = &mut self.stage;
        stage.copy_from_slice(u);
        for j in 0..s {
            let b = tab.weights[j];
            if b != T::zero() {
                axpy(stage, dt * b, &self.explicit[j]);
                axpy(stage, dt * b, &self.implicit[j]);
            }
        }
        if !all_finite(stage) {
            return Err(instability(sys, 0, t, dt));
        }
        u.copy_from_slice(stage);
        Ok(())
    }
}

/// Either stepper behind one interface.
#[derive(Debug, Clone)]
pub enum Stepper<T> {
    Rk4(Rk4<T>),
    Imex(Imex<T>),
}

impl<T: Real> Stepper<T> {
    pub fn new(method: Method, dim: usize) -> Self {
        match method {
            Method::Rk4 => Stepper::Rk4(Rk4::new(dim)),
            Method::Imex => Stepper::Imex(Imex::new(ImexTableau::ssp3_433(), dim)),
        }
    }

    pub fn step<S: SemiDiscrete<T> + ?Sized>(
        &mut self,
        sys: &S,
        u: &mut [Complex<T>],
        t: T,
        dt: T,
    ) -> Result<()> {
        match self {
            Stepper::Rk4(s) => s.step(sys, u, t, dt),
            Stepper::Imex(s) => s.step(sys, u, t, dt),
        }
    }
}

/// One RK4 step on a wave function.
pub fn rk4_step<T: Real, S: SemiDiscrete<T> + ?Sized>(
    sys: &S,
    u: &WaveFunction<T>,
    t: T,
    dt: T,
) -> Result<WaveFunction<T>> {
    check_dim(sys, u)?;
    let mut v = u.values().to_vec();
    Rk4::new(v.len()).step(sys, &mut v, t, dt)?;
    u.with_values(v)
}

/// One IMEX-SSP3(4,3,3) step on a wave function.
pub fn imex_step<T: Real, S: SemiDiscrete<T> + ?Sized>(
    sys: &S,
    u: &WaveFunction<T>,
    t: T,
    dt: T,
) -> Result<WaveFunction<T>> {
    check_dim(sys, u)?;
    let mut v = u.values().to_vec();
    Imex::new(ImexTableau::ssp3_433(), v.len()).step(sys, &mut v, t, dt)?;
    u.with_values(v)
}

fn check_dim<T: Real, S: SemiDiscrete<T> + ?Sized>(sys: &S, u: &WaveFunction<T>) -> Result<()> {
    if sys.dim() != u.len() {
        return Err(Error::Mismatch(format!(
            "state has {} values, right-hand side expects {}",
            u.len(),
            sys.dim()
        )));
    }
    Ok(())
}

/// Evolution summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveStats<T> {
    pub steps: usize,
    pub samples: usize,
    pub t_final: T,
}

/// Sample times `t_final·i/samples`, `i = 0..=samples`.
pub fn sample_times<T: Real>(t_final: T, samples: usize) -> Vec<T> {
    (0..=samples)
        .map(|i| t_final * (T::from_count(i) / T::from_count(samples)))
        .collect()
}

/// Advances `u` from `t = 0` to `t_final` with steps of at most `dt`.
///
/// The run is split into `samples` equal intervals, each covered with full
/// steps and one shortened last step, so every sample time is hit exactly
/// and runs with different `dt` share their sample times. An interval
/// shorter than `dt` takes a single short step.
/// `observe(index, time, values)` is called at `t = 0` and at the end of
/// every interval.
pub fn evolve<T, S, F>(
    sys: &S,
    method: Method,
    u: &mut [Complex<T>],
    t_final: T,
    dt: T,
    samples: usize,
    mut observe: F,
) -> Result<EvolveStats<T>>
where
    T: Real,
    S: SemiDiscrete<T> + ?Sized,
    F: FnMut(usize, T, &[Complex<T>]) -> Result<()>,
{
    if !(t_final > T::zero()) || !t_final.is_finite() {
        return Err(Error::Config(format!("final time must be positive, got {t_final}")));
    }
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::Config(format!("time step must be positive, got {dt}")));
    }
    if u.len() != sys.dim() {
        return Err(Error::Mismatch(format!(
            "state has {} values, right-hand side expects {}",
            u.len(),
            sys.dim()
        )));
    }
    let slack = T::lit(1e-9);
    let samples = samples.max(1);
    let times = sample_times(t_final, samples);

    let mut stepper = Stepper::new(method, u.len());
    let mut steps = 0usize;
    observe(0, T::zero(), u)?;
    for i in 1..=samples {
        let (t0, t1) = (times[i - 1], times[i]);
        let n = steps_to_cover(t1 - t0, dt, slack);
        let mut t = t0;
        for k in 0..n {
            let h = if k + 1 == n { t1 - t } else { dt };
            stepper.step(sys, u, t, h).map_err(|e| match e {
                Error::Instability { time, dt, interaction, .. } => Error::Instability {
                    step: steps,
                    time,
                    dt,
                    interaction,
                },
                other => other,
            })?;
            steps += 1;
            t = if k + 1 == n { t1 } else { t + dt };
        }
        observe(i, t1, u)?;
    }
    Ok(EvolveStats {
        steps,
        samples,
        t_final,
    })
}

fn steps_to_cover<T: Real>(span: T, dt: T, slack: T) -> usize {
    let n = (span / dt - slack).ceil();
    n.to_usize().unwrap_or(usize::MAX).max(1)
}
