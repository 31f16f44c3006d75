//! Uniform grids on a circle, complex wave functions and the Gaussian wave
//! packet used as initial data.

use std::fmt;

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Smallest number of intervals accepted by [`GridCircle::new`].
pub const MIN_INTERVALS: usize = 8;

/// Uniform grid `x_j = j·dx`, `j = 0..=N`, on a circle of circumference
/// `length`. The point `x_N = length` is identified with `x_0 = 0`; the
/// interface sits at this identification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCircle<T> {
    length: T,
    n: usize,
    dx: T,
}

impl<T: Real> GridCircle<T> {
    pub fn new(length: T, n: usize) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::Config(format!("circle length must be positive, got {length}")));
        }
        if n < MIN_INTERVALS {
            return Err(Error::Config(format!(
                "need at least {MIN_INTERVALS} intervals, got {n}"
            )));
        }
        Ok(Self {
            length,
            n,
            dx: length / T::from_count(n),
        })
    }

    pub fn length(&self) -> T {
        self.length
    }

    /// Number of intervals `N`.
    pub fn n_intervals(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    /// Coordinate of point `j`. Computed as `length·(j/N)` so that `x_N` is
    /// exactly `length` and nested grids agree bitwise at shared points.
    #[inline]
    pub fn x(&self, j: usize) -> T {
        self.length * (T::from_count(j) / T::from_count(self.n))
    }

    /// Number of stored values for the given representation.
    pub fn points(&self, rep: Representation) -> usize {
        match rep {
            Representation::Interface => self.n + 1,
            Representation::Periodic => self.n,
        }
    }

    /// Refinement factor `m` with `self.n == m·coarse.n`, if the grids nest.
    pub fn refinement_over(&self, coarse: &GridCircle<T>) -> Result<usize> {
        if self.length != coarse.length {
            return Err(Error::Mismatch(format!(
                "grid lengths differ: {} vs {}",
                self.length, coarse.length
            )));
        }
        if coarse.n == 0 || !self.n.is_multiple_of(coarse.n) {
            return Err(Error::Mismatch(format!(
                "N = {} is not an integer multiple of N = {}",
                self.n, coarse.n
            )));
        }
        Ok(self.n / coarse.n)
    }
}

/// How a wave function is laid out on its grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `N+1` values; `j = 0` and `j = N` are both evolved and coupled by the
    /// interface terms.
    Interface,
    /// `N` values with wraparound indexing; the endpoint is not duplicated.
    Periodic,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Interface => "interface",
            Representation::Periodic => "periodic",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "interface" => Ok(Representation::Interface),
            "periodic" => Ok(Representation::Periodic),
            other => Err(Error::Config(format!("unknown representation '{other}'"))),
        }
    }
}

/// Discrete complex state on a [`GridCircle`].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<T> {
    grid: GridCircle<T>,
    rep: Representation,
    values: Vec<Complex<T>>,
}

impl<T: Real> WaveFunction<T> {
    pub fn new(grid: GridCircle<T>, rep: Representation, values: Vec<Complex<T>>) -> Result<Self> {
        let expected = grid.points(rep);
        if values.len() != expected {
            return Err(Error::Mismatch(format!(
                "{rep} wave function on N = {} needs {expected} values, got {}",
                grid.n_intervals(),
                values.len()
            )));
        }
        Ok(Self { grid, rep, values })
    }

    pub fn zeros(grid: GridCircle<T>, rep: Representation) -> Self {
        Self {
            grid,
            rep,
            values: vec![Complex::new(T::zero(), T::zero()); grid.points(rep)],
        }
    }

    /// Samples `f(x_j)` at every stored point.
    pub fn from_fn(grid: GridCircle<T>, rep: Representation, f: impl Fn(T) -> Complex<T>) -> Self {
        let values = (0..grid.points(rep)).map(|j| f(grid.x(j))).collect();
        Self { grid, rep, values }
    }

    pub fn grid(&self) -> &GridCircle<T> {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        self.rep
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Same grid, same representation, new values.
    pub fn with_values(&self, values: Vec<Complex<T>>) -> Result<Self> {
        Self::new(self.grid, self.rep, values)
    }

    pub(crate) fn expect_layout(&self, rep: Representation, what: &str) -> Result<()> {
        if self.rep != rep {
            return Err(Error::Mismatch(format!(
                "{what} needs a {rep} wave function, got {}",
                self.rep
            )));
        }
        Ok(())
    }

    pub(crate) fn expect_same_layout(&self, other: &Self) -> Result<()> {
        if self.rep != other.rep || self.grid != other.grid {
            return Err(Error::Mismatch(format!(
                "wave functions live on different grids ({} N={} vs {} N={})",
                self.rep,
                self.grid.n_intervals(),
                other.rep,
                other.grid.n_intervals()
            )));
        }
        Ok(())
    }
}

/// Gaussian wave packet `A·exp(−(x−c)²/d)·exp(i·k·x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData<T> {
    pub envelope_center: T,
    pub envelope_denominator: T,
    pub wave_number: T,
    pub amplitude: Complex<T>,
}

impl<T: Real> Default for InitialData<T> {
    /// `exp(−(x−1)²/20)·exp(i·100π·x)`.
    fn default() -> Self {
        Self {
            envelope_center: T::one(),
            envelope_denominator: T::lit(20.0),
            wave_number: T::lit(100.0) * T::PI(),
            amplitude: Complex::new(T::one(), T::zero()),
        }
    }
}

impl<T: Real> InitialData<T> {
    #[inline]
    pub fn eval(&self, x: T) -> Complex<T> {
        let s = x - self.envelope_center;
        let envelope = (-(s * s) / self.envelope_denominator).exp();
        let phase = self.wave_number * x;
        self.amplitude * Complex::new(phase.cos(), phase.sin()) * envelope
    }

    pub fn sample(&self, grid: &GridCircle<T>, rep: Representation) -> WaveFunction<T> {
        WaveFunction::from_fn(*grid, rep, |x| self.eval(x))
    }
}

/// Injection of a fine-grid state onto a coarser nested grid: coarse value
/// `j` is the fine value at point `m·j`. A periodic fine state may be
/// injected into either representation (the endpoint `x_N` wraps to `x_0`);
/// an interface fine state only into the interface representation.
pub fn restrict_to_coarse<T: Real>(
    fine: &WaveFunction<T>,
    coarse_grid: &GridCircle<T>,
    coarse_rep: Representation,
) -> Result<WaveFunction<T>> {
    let m = fine.grid().refinement_over(coarse_grid)?;
    let nf = fine.grid().n_intervals();
    let src = fine.values();
    let values: Vec<_> = match (fine.representation(), coarse_rep) {
        (Representation::Interface, Representation::Interface) => {
            (0..=coarse_grid.n_intervals()).map(|j| src[m * j]).collect()
        }
        (Representation::Periodic, rep) => (0..coarse_grid.points(rep))
            .map(|j| src[(m * j) % nf])
            .collect(),
        (Representation::Interface, Representation::Periodic) => {
            return Err(Error::Mismatch(
                "cannot inject an interface state into the periodic representation".into(),
            ))
        }
    };
    WaveFunction::new(*coarse_grid, coarse_rep, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing_matches_experiment_setups() {
        let g = GridCircle::<f64>::new(2.0, 2000).unwrap();
        assert!((g.dx() - 0.001).abs() < 1e-18);
        let g = GridCircle::<f64>::new(2.0, 8000).unwrap();
        assert!((g.dx() - 0.00025).abs() < 1e-18);
        assert!((g.dx() * 8000.0 - 2.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_coincides_with_origin_on_the_circle() {
        let g = GridCircle::<f64>::new(1.0, 10).unwrap();
        assert_eq!(g.x(10), 1.0);
        assert_eq!(g.x(0), 0.0);
        assert_eq!(g.x(10) - g.length(), g.x(0));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(GridCircle::<f64>::new(0.0, 100), Err(Error::Config(_))));
        assert!(matches!(GridCircle::<f64>::new(-1.0, 100), Err(Error::Config(_))));
        assert!(matches!(GridCircle::<f64>::new(1.0, 7), Err(Error::Config(_))));
        assert!(matches!(GridCircle::<f64>::new(f64::NAN, 100), Err(Error::Config(_))));
    }

    #[test]
    fn initial_data_point_values() {
        let data = InitialData::<f64>::default();
        let one = data.eval(1.0);
        assert!((one.re - 1.0).abs() < 1e-12 && one.im.abs() < 1e-12);
        let origin = data.eval(0.0);
        assert!((origin.re - (-1.0f64 / 20.0).exp()).abs() < 1e-15);
        assert!((origin.re - 0.951229).abs() < 1e-6);
        assert_eq!(origin.im, 0.0);
        let z = data.eval(1.1);
        assert!((z.norm() - (-0.01f64 / 20.0).exp()).abs() < 1e-14);
        assert!((z.norm() - 0.9995).abs() < 1e-4);
    }

    #[test]
    fn interface_endpoints_sample_both_ends() {
        let g = GridCircle::<f64>::new(2.0, 200).unwrap();
        let u = InitialData::default().sample(&g, Representation::Interface);
        assert_eq!(u.len(), 201);
        // 100π·2 is a multiple of 2π and the envelope is symmetric about 1.
        assert!((u.values()[0] - u.values()[200]).norm() < 1e-12);
        let p = InitialData::default().sample(&g, Representation::Periodic);
        assert_eq!(p.len(), 200);
    }

    #[test]
    fn restriction_is_injection() {
        let fine = GridCircle::<f64>::new(2.0, 8000).unwrap();
        let coarse = GridCircle::<f64>::new(2.0, 2000).unwrap();
        let u = WaveFunction::from_fn(fine, Representation::Interface, |x| Complex::new(x, -x));
        let c = restrict_to_coarse(&u, &coarse, Representation::Interface).unwrap();
        for j in 0..=2000 {
            assert_eq!(c.values()[j], u.values()[4 * j]);
        }

        let same = GridCircle::<f64>::new(2.0, 4000).unwrap();
        let v = WaveFunction::from_fn(same, Representation::Periodic, |x| Complex::new(x.sin(), 0.0));
        assert_eq!(restrict_to_coarse(&v, &same, Representation::Periodic).unwrap(), v);

        let k = WaveFunction::from_fn(fine, Representation::Periodic, |_| Complex::new(0.5, 2.0));
        let kc = restrict_to_coarse(&k, &coarse, Representation::Interface).unwrap();
        assert!(kc.values().iter().all(|z| *z == Complex::new(0.5, 2.0)));
    }

    #[test]
    fn restriction_rejects_non_nested_grids() {
        let fine = GridCircle::<f64>::new(2.0, 3000).unwrap();
        let coarse = GridCircle::<f64>::new(2.0, 2000).unwrap();
        let u = WaveFunction::zeros(fine, Representation::Interface);
        assert!(matches!(
            restrict_to_coarse(&u, &coarse, Representation::Interface),
            Err(Error::Mismatch(_))
        ));
        let other = GridCircle::<f64>::new(1.0, 1000).unwrap();
        assert!(restrict_to_coarse(&u, &other, Representation::Interface).is_err());
    }

    #[test]
    fn restriction_commutes_with_sampling() {
        let data = InitialData::<f64>::default();
        for (nf, nc) in [(8000, 2000), (4000, 2000), (800, 200)] {
            let fine = GridCircle::<f64>::new(2.0, nf).unwrap();
            let coarse = GridCircle::<f64>::new(2.0, nc).unwrap();
            for rep in [Representation::Interface, Representation::Periodic] {
                let r = restrict_to_coarse(&data.sample(&fine, rep), &coarse, rep).unwrap();
                assert_eq!(r, data.sample(&coarse, rep));
            }
        }
    }

    #[test]
    fn sampled_default_data_is_bounded_by_one() {
        let g = GridCircle::<f64>::new(2.0, 2000).unwrap();
        let u = InitialData::<f64>::default().sample(&g, Representation::Interface);
        assert!(u.values().iter().all(|z| z.norm() <= 1.0 + 1e-15));
    }
}
