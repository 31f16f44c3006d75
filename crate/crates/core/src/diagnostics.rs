//! Norms, errors against a reference run, convergence indices and the
//! interface-reflection metric.
//!
//! Errors use the trapezoid norm so that runs with different operators can
//! be compared; the operator's own σ-norm is the conserved quantity.

use std::fmt::Write as _;
use std::path::Path;

use crate::grid::{restrict_to_coarse, Representation, WaveFunction};
use crate::sbp::{weighted_inner, SbpOperator};
use crate::{Error, Real, Result};

/// Errors below this are treated as "no information" by
/// [`convergence_index`].
pub const ERROR_FLOOR: f64 = 1e-13;

/// Samples `(t, value)` with strictly increasing times. A value may be
/// absent (for instance an undefined convergence index).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries<T> {
    times: Vec<T>,
    values: Vec<Option<T>>,
}

impl<T: Real> TimeSeries<T> {
    pub fn new() -> Self {
        Self {
            times: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let mut s = Self::new();
        for (t, v) in pairs {
            s.push(t, v)?;
        }
        Ok(s)
    }

    fn push_entry(&mut self, t: T, v: Option<T>) -> Result<()> {
        if let Some(&last) = self.times.last() {
            if !(t > last) {
                return Err(Error::Mismatch(format!(
                    "time series samples must increase strictly: {t} after {last}"
                )));
            }
        }
        self.times.push(t);
        self.values.push(v);
        Ok(())
    }

    pub fn push(&mut self, t: T, v: T) -> Result<()> {
        self.push_entry(t, Some(v))
    }

    pub fn push_absent(&mut self, t: T) -> Result<()> {
        self.push_entry(t, None)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[Option<T>] {
        &self.values
    }

    /// Present samples only.
    pub fn present(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.times
            .iter()
            .zip(&self.values)
            .filter_map(|(&t, v)| v.map(|v| (t, v)))
    }

    pub fn min_present(&self) -> Option<T> {
        self.present().map(|(_, v)| v).reduce(T::min)
    }

    pub fn max_present(&self) -> Option<T> {
        self.present().map(|(_, v)| v).reduce(T::max)
    }

    /// `time,value` CSV with a header line; absent values are empty fields.
    /// Numbers use shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("time,value\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            match v {
                Some(v) => {
                    let _ = writeln!(s, "{t:e},{v:e}");
                }
                None => {
                    let _ = writeln!(s, "{t:e},");
                }
            }
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())
            .map_err(|e| Error::io(format!("writing {}", path.display()), e))
    }

    pub fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut s = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if i == 0 {
                if line != "time,value" {
                    return Err(parse_err(1, format!("expected header 'time,value', got '{line}'")));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (t, v) = line
                .split_once(',')
                .ok_or_else(|| parse_err(i + 1, "expected two columns".into()))?;
            let t: T = t
                .trim()
                .parse()
                .map_err(|_| parse_err(i + 1, format!("bad time '{t}'")))?;
            let v = v.trim();
            let entry = if v.is_empty() {
                None
            } else {
                Some(v.parse::<T>().map_err(|_| parse_err(i + 1, format!("bad value '{v}'")))?)
            };
            s.push_entry(t, entry)
                .map_err(|e| parse_err(i + 1, e.to_string()))?;
        }
        Ok(s)
    }

    /// Applies `f` to every present value.
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            times: self.times.clone(),
            values: self.values.iter().map(|v| v.map(&f)).collect(),
        }
    }
}

/// Trapezoid weights: `dx/2` at both ends of an interface grid, `dx`
/// everywhere else.
fn trapezoid_weight<T: Real>(u: &WaveFunction<T>, j: usize) -> T {
    let dx = u.grid().dx();
    let half = T::lit(0.5);
    match u.representation() {
        Representation::Interface if j == 0 || j + 1 == u.len() => dx * half,
        _ => dx,
    }
}

/// `sqrt(dx·(½|u_0|² + Σ|u_j|² + ½|u_N|²))`; for a periodic state every
/// point has weight `dx`.
pub fn trapezoid_norm<T: Real>(u: &WaveFunction<T>) -> T {
    let mut s = T::zero();
    for (j, z) in u.values().iter().enumerate() {
        s += trapezoid_weight(u, j) * z.norm_sqr();
    }
    s.sqrt()
}

/// Norm induced by the operator's σ weights.
pub fn sigma_norm<T: Real>(op: &SbpOperator<T>, u: &WaveFunction<T>) -> Result<T> {
    Ok(weighted_inner(op, u, u)?.re.max(T::zero()).sqrt())
}

/// Trapezoid norm of `u` minus the reference injected onto `u`'s grid.
pub fn error_vs_reference<T: Real>(u: &WaveFunction<T>, reference: &WaveFunction<T>) -> Result<T> {
    let r = restrict_to_coarse(reference, u.grid(), u.representation())?;
    let diff: Vec<_> = u.values().iter().zip(r.values()).map(|(a, b)| a - b).collect();
    Ok(trapezoid_norm(&u.with_values(diff)?))
}

/// `q(t) = log2(e_coarse(t)/e_fine(t))`, absent where either error is below
/// [`ERROR_FLOOR`] or missing.
pub fn convergence_index<T: Real>(coarse: &TimeSeries<T>, fine: &TimeSeries<T>) -> Result<TimeSeries<T>> {
    if coarse.times() != fine.times() {
        return Err(Error::Mismatch(format!(
            "convergence index needs identical sample times ({} vs {} samples)",
            coarse.len(),
            fine.len()
        )));
    }
    let floor = T::lit(ERROR_FLOOR);
    let mut q = TimeSeries::new();
    for ((&t, a), b) in coarse.times().iter().zip(coarse.values()).zip(fine.values()) {
        match (a, b) {
            (Some(a), Some(b)) if *a >= floor && *b >= floor => q.push(t, (*a / *b).log2())?,
            _ => q.push_absent(t)?,
        }
    }
    Ok(q)
}

/// Fraction of `|u|²` (trapezoid weights) at points with `x` in
/// `[lo, hi]`.
pub fn reflected_fraction<T: Real>(u: &WaveFunction<T>, window: (T, T)) -> Result<T> {
    let (lo, hi) = window;
    let len = u.grid().length();
    if !(lo < hi) || lo < T::zero() || hi > len {
        return Err(Error::Config(format!(
            "reflection window [{lo}, {hi}] must be a non-empty part of [0, {len}]"
        )));
    }
    let mut inside = T::zero();
    let mut total = T::zero();
    let mut hits = 0usize;
    for (j, z) in u.values().iter().enumerate() {
        let w = trapezoid_weight(u, j) * z.norm_sqr();
        total += w;
        let x = u.grid().x(j);
        if x >= lo && x <= hi {
            inside += w;
            hits += 1;
        }
    }
    if hits == 0 {
        return Err(Error::Config(format!(
            "reflection window [{lo}, {hi}] contains no grid points"
        )));
    }
    if total == T::zero() {
        return Ok(T::zero());
    }
    Ok(inside / total)
}

/// Fraction of `|u|²` within circular distance `radius` of the interface
/// point `x = 0`.
pub fn interface_occupancy<T: Real>(u: &WaveFunction<T>, radius: T) -> T {
    let len = u.grid().length();
    let mut inside = T::zero();
    let mut total = T::zero();
    for (j, z) in u.values().iter().enumerate() {
        let w = trapezoid_weight(u, j) * z.norm_sqr();
        total += w;
        let x = u.grid().x(j);
        if x.min(len - x) <= radius {
            inside += w;
        }
    }
    if total == T::zero() {
        T::zero()
    } else {
        inside / total
    }
}

/// Marks the samples at which the pulse is crossing the interface: those
/// whose occupancy is at least `ratio` times the largest occupancy seen.
pub fn crossing_mask<T: Real>(occupancy: &TimeSeries<T>, ratio: T) -> Vec<bool> {
    let peak = occupancy.max_present().unwrap_or(T::zero());
    occupancy
        .values()
        .iter()
        .map(|v| v.map(|v| peak > T::zero() && v >= ratio * peak).unwrap_or(false))
        .collect()
}
