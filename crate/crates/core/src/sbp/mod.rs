//! Summation-by-parts first-derivative operators.
//!
//! [`SbpOperator`] is a diagonal-norm operator for the interface
//! representation (`N+1` points, one-sided closures at both ends);
//! [`PeriodicStencil`] is the matching centred difference with wraparound,
//! used for the single-grid reference runs. Second derivatives are always
//! the first-derivative operator applied twice.
//!
//! With `<u,v> = dx Σ σ_j conj(u_j) v_j` every shipped operator satisfies
//! `<u,Dv> + <Du,v> = conj(u_N) v_N - conj(u_0) v_0`.

mod rows;
mod tables;

use std::fmt::Write as _;

use num_complex::Complex;

pub use rows::{Row, RowOperator};

use crate::grid::{Representation, WaveFunction};
use crate::{Error, Real, Result};

/// Interior orders with shipped tables.
pub const ORDERS: [usize; 4] = [2, 4, 6, 8];

fn check_order(order: usize) -> Result<()> {
    if ORDERS.contains(&order) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "unsupported operator order {order}; expected one of 2, 4, 6, 8"
        )))
    }
}

fn interior_table(order: usize) -> &'static [f64] {
    match order {
        2 => &tables::SBP_2_1_INTERIOR,
        4 => &tables::SBP_4_2_INTERIOR,
        6 => &tables::SBP_6_3_INTERIOR,
        8 => &tables::SBP_8_4_INTERIOR,
        _ => unreachable!(),
    }
}

/// Diagonal-norm SBP operator of interior order `2p` and boundary order `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SbpOperator<T> {
    interior_order: usize,
    boundary_order: usize,
    /// `a_1..a_p`; the stencil is antisymmetric, `a_{-k} = -a_k`.
    interior: Vec<T>,
    /// Closure rows for unit spacing, all of equal width.
    closure: Vec<Vec<T>>,
    /// `σ_0..σ_{r-1}`.
    weights: Vec<T>,
}

impl<T: Real> SbpOperator<T> {
    /// The shipped (2,1), (4,2), (6,3) or (8,4) operator.
    pub fn new(interior_order: usize) -> Result<Self> {
        check_order(interior_order)?;
        fn conv<T: Real, const W: usize>(rows: &[[f64; W]]) -> Vec<Vec<T>> {
            rows.iter().map(|r| r.iter().map(|&c| T::lit(c)).collect()).collect()
        }
        let (closure, weights): (Vec<Vec<T>>, &[f64]) = match interior_order {
            2 => (conv(&tables::SBP_2_1_CLOSURE), &tables::SBP_2_1_WEIGHTS),
            4 => (conv(&tables::SBP_4_2_CLOSURE), &tables::SBP_4_2_WEIGHTS),
            6 => (conv(&tables::SBP_6_3_CLOSURE), &tables::SBP_6_3_WEIGHTS),
            8 => (conv(&tables::SBP_8_4_CLOSURE), &tables::SBP_8_4_WEIGHTS),
            _ => unreachable!(),
        };
        Self::from_parts(
            interior_order,
            interior_table(interior_order).iter().map(|&c| T::lit(c)).collect(),
            closure,
            weights.iter().map(|&w| T::lit(w)).collect(),
        )
    }

    /// Builds an operator from explicit tables. Only the shapes are checked;
    /// whether the tables really are SBP is what [`verify_sbp_identity`]
    /// measures.
    pub fn from_parts(
        interior_order: usize,
        interior: Vec<T>,
        closure: Vec<Vec<T>>,
        weights: Vec<T>,
    ) -> Result<Self> {
        if interior_order == 0 || !interior_order.is_multiple_of(2) || interior.len() != interior_order / 2 {
            return Err(Error::Config(format!(
                "interior order {interior_order} does not match {} stencil coefficients",
                interior.len()
            )));
        }
        if closure.is_empty() || closure.len() != weights.len() {
            return Err(Error::Config("closure rows and norm weights differ in count".into()));
        }
        let width = closure[0].len();
        if closure.iter().any(|r| r.len() != width) || width < closure.len() {
            return Err(Error::Config("closure rows must share a width of at least r".into()));
        }
        if weights.iter().any(|&w| !(w > T::zero())) {
            return Err(Error::Config("norm weights must be positive".into()));
        }
        Ok(Self {
            interior_order,
            boundary_order: (interior_order / 2).max(1),
            interior,
            closure,
            weights,
        })
    }

    pub fn interior_order(&self) -> usize {
        self.interior_order
    }

    pub fn boundary_order(&self) -> usize {
        self.boundary_order
    }

    /// Number of closure rows `r` at each end.
    pub fn closure_rows(&self) -> usize {
        self.closure.len()
    }

    pub fn closure(&self) -> &[Vec<T>] {
        &self.closure
    }

    pub fn interior_coefficients(&self) -> &[T] {
        &self.interior
    }

    pub fn boundary_weights(&self) -> &[T] {
        &self.weights
    }

    /// Smallest point count (`N+1`) on which the two closures do not overlap.
    pub fn min_points(&self) -> usize {
        (2 * self.closure.len()).max(self.closure[0].len()).max(2 * self.interior.len() + 1)
    }

    fn check_points(&self, n_points: usize) -> Result<()> {
        if n_points < self.min_points() {
            return Err(Error::Config(format!(
                "({},{}) operator needs at least {} points, grid has {n_points}",
                self.interior_order,
                self.boundary_order,
                self.min_points()
            )));
        }
        Ok(())
    }

    /// Norm weights `σ_0..σ_N` for a grid with `n_intervals` intervals.
    pub fn sigma(&self, n_intervals: usize) -> Vec<T> {
        let n = n_intervals + 1;
        let mut s = vec![T::one(); n];
        let r = self.weights.len().min(n);
        for (i, &w) in self.weights.iter().take(r).enumerate() {
            s[i] = w;
            s[n - 1 - i] = w;
        }
        s
    }

    /// `D` as a banded row operator on `n_points` points, scaled by `1/dx`.
    pub fn rows(&self, n_points: usize, dx: T) -> Result<RowOperator<T>> {
        self.check_points(n_points)?;
        let inv = dx.recip();
        let head: Vec<Row<T>> = self
            .closure
            .iter()
            .map(|r| Row {
                start: 0,
                coeffs: r.iter().map(|&c| c * inv).collect(),
            })
            .collect();
        let width = self.closure[0].len();
        let tail: Vec<Row<T>> = self
            .closure
            .iter()
            .rev()
            .map(|r| Row {
                start: n_points - width,
                coeffs: r.iter().rev().map(|&c| -c * inv).collect(),
            })
            .collect();
        Ok(RowOperator::new(n_points, head, tail, self.stencil(inv)))
    }

    fn stencil(&self, scale: T) -> Vec<T> {
        let p = self.interior.len();
        let mut st = vec![T::zero(); 2 * p + 1];
        for (k, &a) in self.interior.iter().enumerate() {
            st[p + 1 + k] = a * scale;
            st[p - 1 - k] = -a * scale;
        }
        st
    }

    /// `out = D u` for raw interface values (`N+1` entries).
    pub fn apply_d_into(&self, u: &[Complex<T>], dx: T, out: &mut [Complex<T>]) {
        let n = u.len();
        assert_eq!(out.len(), n);
        assert!(n >= self.min_points(), "grid too small for this operator");
        let inv = dx.recip();
        let r = self.closure.len();
        for (i, row) in self.closure.iter().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, &c) in row.iter().enumerate() {
                acc += u[j] * c;
            }
            out[i] = acc * inv;
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, &c) in row.iter().enumerate() {
                acc += u[n - 1 - j] * c;
            }
            out[n - 1 - i] = -acc * inv;
        }
        for i in r..n - r {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (k, &a) in self.interior.iter().enumerate() {
                acc += (u[i + k + 1] - u[i - k - 1]) * a;
            }
            out[i] = acc * inv;
        }
    }

    /// `(Du)_0` and `(Du)_N`.
    pub fn boundary_derivatives(&self, u: &[Complex<T>], dx: T) -> (Complex<T>, Complex<T>) {
        let n = u.len();
        let row = &self.closure[0];
        let mut left = Complex::new(T::zero(), T::zero());
        let mut right = Complex::new(T::zero(), T::zero());
        for (j, &c) in row.iter().enumerate() {
            left += u[j] * c;
            right += u[n - 1 - j] * c;
        }
        let inv = dx.recip();
        (left * inv, -right * inv)
    }

    pub fn apply_d(&self, u: &WaveFunction<T>) -> Result<WaveFunction<T>> {
        u.expect_layout(Representation::Interface, "SBP derivative")?;
        self.check_points(u.len())?;
        let mut out = vec![Complex::new(T::zero(), T::zero()); u.len()];
        self.apply_d_into(u.values(), u.grid().dx(), &mut out);
        u.with_values(out)
    }

    /// `D(Du)`.
    pub fn apply_d_twice(&self, u: &WaveFunction<T>) -> Result<WaveFunction<T>> {
        self.apply_d(&self.apply_d(u)?)
    }

    /// Plain-text coefficient listing, one stencil line per row.
    pub fn coefficient_dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# SBP operator ({},{}) unit spacing",
            self.interior_order, self.boundary_order
        );
        let _ = writeln!(s, "# interior a_1..a_p");
        let _ = writeln!(
            s,
            "interior {}",
            self.interior.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        );
        for (i, w) in self.weights.iter().enumerate() {
            let _ = writeln!(s, "sigma {i} {w}");
        }
        for (i, row) in self.closure.iter().enumerate() {
            let _ = writeln!(
                s,
                "closure {i} {}",
                row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        s
    }
}

/// Centred antisymmetric first-derivative stencil on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicStencil<T> {
    order: usize,
    interior: Vec<T>,
}

impl<T: Real> PeriodicStencil<T> {
    pub fn new(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            interior: interior_table(order).iter().map(|&c| T::lit(c)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[T] {
        &self.interior
    }

    /// Full centred stencil `c_{-p}..c_p`, scaled.
    pub fn first_derivative_stencil(&self, scale: T) -> Vec<T> {
        let p = self.interior.len();
        let mut st = vec![T::zero(); 2 * p + 1];
        for (k, &a) in self.interior.iter().enumerate() {
            st[p + 1 + k] = a * scale;
            st[p - 1 - k] = -a * scale;
        }
        st
    }

    /// Stencil of `D∘D`, i.e. the first-derivative stencil convolved with
    /// itself, scaled.
    pub fn second_derivative_stencil(&self, scale: T) -> Vec<T> {
        let d = self.first_derivative_stencil(T::one());
        let mut st = vec![T::zero(); 2 * d.len() - 1];
        for (i, &a) in d.iter().enumerate() {
            for (j, &b) in d.iter().enumerate() {
                st[i + j] += a * b;
            }
        }
        st.iter_mut().for_each(|c| *c *= scale);
        st
    }

    /// `out = D u` with wraparound indexing.
    pub fn apply_d_into(&self, u: &[Complex<T>], dx: T, out: &mut [Complex<T>]) {
        let st = self.first_derivative_stencil(dx.recip());
        apply_periodic_stencil(&st, u, out);
    }

    pub fn apply_d(&self, u: &WaveFunction<T>) -> Result<WaveFunction<T>> {
        u.expect_layout(Representation::Periodic, "periodic derivative")?;
        let mut out = vec![Complex::new(T::zero(), T::zero()); u.len()];
        self.apply_d_into(u.values(), u.grid().dx(), &mut out);
        u.with_values(out)
    }

    pub fn apply_d_twice(&self, u: &WaveFunction<T>) -> Result<WaveFunction<T>> {
        self.apply_d(&self.apply_d(u)?)
    }
}

/// `out_i = Σ_m st[m] u[(i + m - w) mod n]` for a centred stencil of half
/// width `w`.
pub fn apply_periodic_stencil<T: Real>(st: &[T], u: &[Complex<T>], out: &mut [Complex<T>]) {
    let n = u.len();
    assert_eq!(out.len(), n);
    let w = st.len() / 2;
    let wrap = |i: usize| {
        let mut re = T::zero();
        let mut im = T::zero();
        for (m, &c) in st.iter().enumerate() {
            let z = u[(i + n * (w / n + 1) + m - w) % n];
            re += c * z.re;
            im += c * z.im;
        }
        Complex::new(re, im)
    };
    if n <= 2 * w {
        for (i, o) in out.iter_mut().enumerate() {
            *o = wrap(i);
        }
        return;
    }
    for i in 0..w {
        out[i] = wrap(i);
        out[n - 1 - i] = wrap(n - 1 - i);
    }
    for i in w..n - w {
        let mut re = T::zero();
        let mut im = T::zero();
        for (&c, z) in st.iter().zip(&u[i - w..=i + w]) {
            re += c * z.re;
            im += c * z.im;
        }
        out[i] = Complex::new(re, im);
    }
}

/// `dx Σ σ_j conj(u_j) v_j` with the operator's norm weights.
pub fn weighted_inner<T: Real>(
    op: &SbpOperator<T>,
    u: &WaveFunction<T>,
    v: &WaveFunction<T>,
) -> Result<Complex<T>> {
    u.expect_layout(Representation::Interface, "weighted inner product")?;
    u.expect_same_layout(v)?;
    let sigma = op.sigma(u.grid().n_intervals());
    Ok(weighted_inner_raw(&sigma, u.grid().dx(), u.values(), v.values()))
}

pub(crate) fn weighted_inner_raw<T: Real>(
    sigma: &[T],
    dx: T,
    u: &[Complex<T>],
    v: &[Complex<T>],
) -> Complex<T> {
    let mut re = T::zero();
    let mut im = T::zero();
    for ((&s, a), b) in sigma.iter().zip(u).zip(v) {
        let z = a.conj() * b;
        re += s * z.re;
        im += s * z.im;
    }
    Complex::new(re * dx, im * dx)
}

/// Relative residual of the SBP identity
/// `<u,Dv> + <Du,v> = conj(u_N) v_N - conj(u_0) v_0`.
///
/// The absolute residual is divided by the sum of the magnitudes of the four
/// terms, so the result is dimensionless and round-off sized for a valid
/// operator. Returns zero when every term vanishes.
pub fn verify_sbp_identity<T: Real>(
    op: &SbpOperator<T>,
    u: &WaveFunction<T>,
    v: &WaveFunction<T>,
) -> Result<T> {
    let du = op.apply_d(u)?;
    let dv = op.apply_d(v)?;
    let lhs1 = weighted_inner(op, u, &dv)?;
    let lhs2 = weighted_inner(op, &du, v)?;
    let n = u.len() - 1;
    let right = u.values()[n].conj() * v.values()[n];
    let left = u.values()[0].conj() * v.values()[0];
    let residual = (lhs1 + lhs2 - (right - left)).norm();
    let scale = lhs1.norm() + lhs2.norm() + right.norm() + left.norm();
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(residual / scale)
}
