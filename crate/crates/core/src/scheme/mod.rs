//! Semi-discrete right-hand sides for `i ∂t Φ = ΔΦ + VΦ`, i.e.
//! `∂t Φ = −i(ΔΦ + VΦ)`.
//!
//! [`PeriodicScheme`] is the single-grid reference discretisation.
//! [`InterfaceScheme`] keeps the two ends of the grid apart and couples them
//! at `x = 0` with a boundary correction and a two-point penalty; the
//! penalty is the stiff part handed to the IMEX integrator.

mod dissipation;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::grid::{GridCircle, Representation, WaveFunction};
use crate::integrate::{penalty_solve, SemiDiscrete};
use crate::sbp::{apply_periodic_stencil, PeriodicStencil, RowOperator, SbpOperator};
use crate::{Error, Real, Result};

pub use dissipation::{ko_dissipation_interface, ko_dissipation_periodic};

/// Real potential `V(x, t)`.
pub type Potential<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// How the interaction factor `L` is chosen for a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LScaling<T> {
    /// `L = 1/(σ_0·dx²)`, the largest value that keeps the penalty within
    /// the explicit time-step limit of the principal part.
    ExplicitBound,
    /// `L = coeff·dx^(−exponent)`.
    Power { coeff: T, exponent: i32 },
    /// A fixed, possibly complex, value.
    Fixed(Complex<T>),
}

impl<T: Real> LScaling<T> {
    pub fn resolve(&self, sigma0: T, dx: T) -> Complex<T> {
        match *self {
            LScaling::ExplicitBound => Complex::new((sigma0 * dx * dx).recip(), T::zero()),
            LScaling::Power { coeff, exponent } => Complex::new(coeff * dx.powi(-exponent), T::zero()),
            LScaling::Fixed(l) => l,
        }
    }
}

impl<T: Real> fmt::Display for LScaling<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LScaling::ExplicitBound => f.write_str("explicit-bound"),
            LScaling::Power { coeff, exponent } => write!(f, "{coeff}*dx^-{exponent}"),
            LScaling::Fixed(l) => write!(f, "{}{:+}i", l.re, l.im),
        }
    }
}

#[derive(Clone)]
pub struct SchemeConfig<T> {
    pub l_scaling: LScaling<T>,
    /// Kreiss-Oliger strength `ε ≥ 0`.
    pub dissipation_epsilon: T,
    pub potential: Option<Potential<T>>,
    /// Include the boundary-flux correction. Switching it off gives the
    /// uncorrected scheme, for diagnostics only.
    pub sat_correction: bool,
}

impl<T: Real> Default for SchemeConfig<T> {
    fn default() -> Self {
        Self {
            l_scaling: LScaling::ExplicitBound,
            dissipation_epsilon: T::zero(),
            potential: None,
            sat_correction: true,
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for SchemeConfig<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchemeConfig")
            .field("l_scaling", &self.l_scaling)
            .field("dissipation_epsilon", &self.dissipation_epsilon)
            .field("potential", &self.potential.as_ref().map(|_| "<fn>"))
            .field("sat_correction", &self.sat_correction)
            .finish()
    }
}

impl<T: Real> SchemeConfig<T> {
    pub fn with_l(mut self, l: LScaling<T>) -> Self {
        self.l_scaling = l;
        self
    }

    pub fn with_epsilon(mut self, eps: T) -> Self {
        self.dissipation_epsilon = eps;
        self
    }

    pub fn with_potential(mut self, v: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        self.potential = Some(Arc::new(v));
        self
    }

    fn check(&self) -> Result<()> {
        let eps = self.dissipation_epsilon;
        if !(eps >= T::zero()) || !eps.is_finite() {
            return Err(Error::Config(format!("dissipation epsilon must be >= 0, got {eps}")));
        }
        Ok(())
    }
}

#[inline]
fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `z ↦ −i z`.
#[inline(always)]
fn times_minus_i<T: Real>(z: Complex<T>) -> Complex<T> {
    Complex::new(z.im, -z.re)
}

fn add_potential<T: Real>(v: &Potential<T>, x: &[T], t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
    for ((o, &xj), &z) in out.iter_mut().zip(x).zip(u) {
        *o += times_minus_i(z * v(xj, t));
    }
}

/// Interface discretisation on `N+1` points.
///
/// With `D` the SBP operator and `H = dx·diag(σ)` its norm,
///
/// ```text
/// ∂t u = −i( D²u + e_0 (Du)_0/(dx σ_0) − e_N (Du)_N/(dx σ_N) + V u )
///        − iL(u_0 − u_N)(e_0 − e_N) + M u
/// ```
///
/// The first bracket is `−i(−H⁻¹DᵀHD + V)`, anti-Hermitian in the `H` inner
/// product, so for real `L` and `ε = 0` the norm is conserved. `M` is the
/// Kreiss-Oliger term.
#[derive(Debug, Clone)]
pub struct InterfaceScheme<T> {
    grid: GridCircle<T>,
    op: SbpOperator<T>,
    cfg: SchemeConfig<T>,
    l: Complex<T>,
    sigma: Vec<T>,
    principal: RowOperator<T>,
    derivative: RowOperator<T>,
    dissipation: Option<RowOperator<T>>,
    x: Vec<T>,
}

impl<T: Real> InterfaceScheme<T> {
    pub fn new(op: SbpOperator<T>, grid: GridCircle<T>, cfg: SchemeConfig<T>) -> Result<Self> {
        cfg.check()?;
        let n = grid.points(Representation::Interface);
        let dx = grid.dx();
        let d = op.rows(n, dx)?;
        let sigma = op.sigma(grid.n_intervals());
        let mut principal = d.compose(&d);
        if cfg.sat_correction {
            let (s0, c0) = d.row(0);
            let (sn, cn) = d.row(n - 1);
            principal.add_scaled_row(0, (dx * sigma[0]).recip(), s0, &c0);
            principal.add_scaled_row(n - 1, -(dx * sigma[n - 1]).recip(), sn, &cn);
        }
        let l = cfg.l_scaling.resolve(sigma[0], dx);
        if !(l.re >= T::zero()) || !l.im.is_finite() {
            return Err(Error::Config(format!(
                "interaction factor must have a non-negative real part, got {l}"
            )));
        }
        let dissipation = (cfg.dissipation_epsilon > T::zero())
            .then(|| dissipation::interface_operator(&sigma, dx, cfg.dissipation_epsilon));
        let x = (0..n).map(|j| grid.x(j)).collect();
        Ok(Self {
            grid,
            op,
            cfg,
            l,
            sigma,
            principal,
            derivative: d,
            dissipation,
            x,
        })
    }

    pub fn grid(&self) -> &GridCircle<T> {
        &self.grid
    }

    pub fn operator(&self) -> &SbpOperator<T> {
        &self.op
    }

    pub fn config(&self) -> &SchemeConfig<T> {
        &self.cfg
    }

    /// Resolved interaction factor `L`.
    pub fn interaction_factor(&self) -> Complex<T> {
        self.l
    }

    /// Norm weights `σ_0..σ_N`.
    pub fn sigma(&self) -> &[T] {
        &self.sigma
    }

    /// `(Du)_0` and `(Du)_N`.
    pub fn boundary_derivatives(&self, u: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
        let n = u.len();
        (self.derivative.apply_row(0, u), self.derivative.apply_row(n - 1, u))
    }

    fn check(&self, u: &WaveFunction<T>) -> Result<()> {
        u.expect_layout(Representation::Interface, "interface scheme")?;
        if *u.grid() != self.grid {
            return Err(Error::Mismatch(format!(
                "state has N={}, scheme was built for N={}",
                u.grid().n_intervals(),
                self.grid.n_intervals()
            )));
        }
        Ok(())
    }

    /// Full right-hand side.
    pub fn rhs(&self, u: &WaveFunction<T>, t: T) -> Result<WaveFunction<T>> {
        self.check(u)?;
        let mut out = vec![zero(); u.len()];
        self.rhs_into(t, u.values(), &mut out);
        u.with_values(out)
    }

    /// `(explicit part, penalty part)`; their sum is [`Self::rhs`].
    pub fn rhs_split(&self, u: &WaveFunction<T>, t: T) -> Result<(WaveFunction<T>, WaveFunction<T>)> {
        self.check(u)?;
        let mut e = vec![zero(); u.len()];
        let mut s = vec![zero(); u.len()];
        self.explicit_into(t, u.values(), &mut e);
        self.stiff_into(t, u.values(), &mut s);
        Ok((u.with_values(e)?, u.with_values(s)?))
    }

    #[inline]
    fn penalty(&self, u: &[Complex<T>]) -> Complex<T> {
        times_minus_i(self.l * (u[0] - u[u.len() - 1]))
    }
}

impl<T: Real> SemiDiscrete<T> for InterfaceScheme<T> {
    fn dim(&self) -> usize {
        self.x.len()
    }

    fn rhs_into(&self, t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
        self.explicit_into(t, u, out);
        let p = self.penalty(u);
        let n = out.len();
        out[0] += p;
        out[n - 1] -= p;
    }

    fn explicit_into(&self, t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
        self.principal.apply_into(u, out);
        out.iter_mut().for_each(|z| *z = times_minus_i(*z));
        if let Some(v) = &self.cfg.potential {
            add_potential(v, &self.x, t, u, out);
        }
        if let Some(m) = &self.dissipation {
            m.apply_add_into(u, out);
        }
    }

    fn stiff_into(&self, _t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
        out.iter_mut().for_each(|z| *z = zero());
        let p = self.penalty(u);
        let n = out.len();
        out[0] = p;
        out[n - 1] = -p;
    }

    fn solve_stiff(&self, _t: T, coeff: T, v: &mut [Complex<T>]) {
        let n = v.len();
        let (a, b) = penalty_solve(self.l, coeff, v[0], v[n - 1]);
        v[0] = a;
        v[n - 1] = b;
    }

    fn interaction_label(&self) -> String {
        format!("{:e}{:+e}i ({})", self.l.re, self.l.im, self.cfg.l_scaling)
    }
}

/// Periodic discretisation on `N` points:
/// `∂t u = −i(D²u + Vu) + M u` with `D` the centred stencil.
#[derive(Debug, Clone)]
pub struct PeriodicScheme<T> {
    grid: GridCircle<T>,
    stencil: PeriodicStencil<T>,
    cfg: SchemeConfig<T>,
    second: Vec<T>,
    dissipation: Vec<T>,
    x: Vec<T>,
}

impl<T: Real> PeriodicScheme<T> {
    pub fn new(stencil: PeriodicStencil<T>, grid: GridCircle<T>, cfg: SchemeConfig<T>) -> Result<Self> {
        cfg.check()?;
        let n = grid.points(Representation::Periodic);
        let dx = grid.dx();
        let second = stencil.second_derivative_stencil((dx * dx).recip());
        if second.len() > n {
            return Err(Error::Config(format!(
                "periodic order {} needs at least {} points, grid has {n}",
                stencil.order(),
                second.len()
            )));
        }
        let dissipation = if cfg.dissipation_epsilon > T::zero() {
            dissipation::periodic_stencil(dx, cfg.dissipation_epsilon)
        } else {
            Vec::new()
        };
        let x = (0..n).map(|j| grid.x(j)).collect();
        Ok(Self {
            grid,
            stencil,
            cfg,
            second,
            dissipation,
            x,
        })
    }

    pub fn grid(&self) -> &GridCircle<T> {
        &self.grid
    }

    pub fn stencil(&self) -> &PeriodicStencil<T> {
        &self.stencil
    }

    pub fn config(&self) -> &SchemeConfig<T> {
        &self.cfg
    }

    pub fn rhs(&self, u: &WaveFunction<T>, t: T) -> Result<WaveFunction<T>> {
        u.expect_layout(Representation::Periodic, "periodic scheme")?;
        if *u.grid() != self.grid {
            return Err(Error::Mismatch(format!(
                "state has N={}, scheme was built for N={}",
                u.grid().n_intervals(),
                self.grid.n_intervals()
            )));
        }
        let mut out = vec![zero(); u.len()];
        self.rhs_into(t, u.values(), &mut out);
        u.with_values(out)
    }
}

impl<T: Real> SemiDiscrete<T> for PeriodicScheme<T> {
    fn dim(&self) -> usize {
        self.x.len()
    }

    fn rhs_into(&self, t: T, u: &[Complex<T>], out: &mut [Complex<T>]) {
        apply_periodic_stencil(&self.second, u, out);
        out.iter_mut().for_each(|z| *z = times_minus_i(*z));
        if let Some(v) = &self.cfg.potential {
            add_potential(v, &self.x, t, u, out);
        }
        if !self.dissipation.is_empty() {
            let mut m = vec![zero(); u.len()];
            apply_periodic_stencil(&self.dissipation, u, &mut m);
            out.iter_mut().zip(&m).for_each(|(o, z)| *o += *z);
        }
    }
}

#[cfg(test)]
mod tests;
