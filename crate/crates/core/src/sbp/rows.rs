use num_complex::Complex;

use crate::Real;

/// One explicitly stored matrix row: contiguous coefficients starting at
/// column `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row<T> {
    pub start: usize,
    pub coeffs: Vec<T>,
}

impl<T: Real> Row<T> {
    #[inline]
    fn dot(&self, u: &[Complex<T>]) -> Complex<T> {
        dot(&self.coeffs, &u[self.start..self.start + self.coeffs.len()])
    }

    fn get(&self, col: usize) -> T {
        if col >= self.start && col < self.start + self.coeffs.len() {
            self.coeffs[col - self.start]
        } else {
            T::zero()
        }
    }
}

#[inline(always)]
fn dot<T: Real>(coeffs: &[T], u: &[Complex<T>]) -> Complex<T> {
    let mut re = T::zero();
    let mut im = T::zero();
    for (&c, z) in coeffs.iter().zip(u) {
        re += c * z.re;
        im += c * z.im;
    }
    Complex::new(re, im)
}

/// Banded operator on `n` points with explicitly stored boundary rows and a
/// single centred stencil for all rows in between.
///
/// Rows `0..head.len()` and `n - tail.len()..n` are stored; every other row
/// `i` applies `stencil[m]` to `u[i - half_width + m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowOperator<T> {
    n: usize,
    head: Vec<Row<T>>,
    tail: Vec<Row<T>>,
    stencil: Vec<T>,
    half_width: usize,
}

impl<T: Real> RowOperator<T> {
    pub(crate) fn new(n: usize, head: Vec<Row<T>>, tail: Vec<Row<T>>, stencil: Vec<T>) -> Self {
        assert!(stencil.len() % 2 == 1, "stencil must be centred");
        assert!(head.len() + tail.len() <= n);
        let half_width = stencil.len() / 2;
        if head.len() + tail.len() < n {
            assert!(head.len() >= half_width && tail.len() >= half_width);
        }
        Self {
            n,
            head,
            tail,
            stencil,
            half_width,
        }
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    fn interior(&self) -> std::ops::Range<usize> {
        self.head.len()..self.n - self.tail.len()
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> T {
        if i < self.head.len() {
            self.head[i].get(j)
        } else if i >= self.n - self.tail.len() {
            self.tail[i - (self.n - self.tail.len())].get(j)
        } else {
            let off = j as isize - i as isize + self.half_width as isize;
            if off >= 0 && (off as usize) < self.stencil.len() {
                self.stencil[off as usize]
            } else {
                T::zero()
            }
        }
    }

    /// Row `i` as `(start column, coefficients)`.
    pub fn row(&self, i: usize) -> (usize, Vec<T>) {
        if i < self.head.len() {
            (self.head[i].start, self.head[i].coeffs.clone())
        } else if i >= self.n - self.tail.len() {
            let r = &self.tail[i - (self.n - self.tail.len())];
            (r.start, r.coeffs.clone())
        } else {
            (i - self.half_width, self.stencil.clone())
        }
    }

    /// `out = M u`.
    pub fn apply_into(&self, u: &[Complex<T>], out: &mut [Complex<T>]) {
        assert_eq!(u.len(), self.n);
        assert_eq!(out.len(), self.n);
        for (row, o) in self.head.iter().zip(out.iter_mut()) {
            *o = row.dot(u);
        }
        let w = self.stencil.len();
        let interior = self.interior();
        let lo = interior.start;
        for (i, o) in out[interior].iter_mut().enumerate() {
            let s = lo + i - self.half_width;
            *o = dot(&self.stencil, &u[s..s + w]);
        }
        let t0 = self.n - self.tail.len();
        for (row, o) in self.tail.iter().zip(out[t0..].iter_mut()) {
            *o = row.dot(u);
        }
    }

    /// `out += M u`.
    pub fn apply_add_into(&self, u: &[Complex<T>], out: &mut [Complex<T>]) {
        assert_eq!(u.len(), self.n);
        assert_eq!(out.len(), self.n);
        for (row, o) in self.head.iter().zip(out.iter_mut()) {
            *o += row.dot(u);
        }
        let w = self.stencil.len();
        let interior = self.interior();
        let lo = interior.start;
        for (i, o) in out[interior].iter_mut().enumerate() {
            let s = lo + i - self.half_width;
            *o += dot(&self.stencil, &u[s..s + w]);
        }
        let t0 = self.n - self.tail.len();
        for (row, o) in self.tail.iter().zip(out[t0..].iter_mut()) {
            *o += row.dot(u);
        }
    }

    /// Value of row `i` applied to `u`.
    pub fn apply_row(&self, i: usize, u: &[Complex<T>]) -> Complex<T> {
        if i < self.head.len() {
            self.head[i].dot(u)
        } else if i >= self.n - self.tail.len() {
            self.tail[i - (self.n - self.tail.len())].dot(u)
        } else {
            let s = i - self.half_width;
            dot(&self.stencil, &u[s..s + self.stencil.len()])
        }
    }

    pub fn scale(&mut self, s: T) {
        for r in self.head.iter_mut().chain(self.tail.iter_mut()) {
            r.coeffs.iter_mut().for_each(|c| *c *= s);
        }
        self.stencil.iter_mut().for_each(|c| *c *= s);
    }

    /// Adds `s · other_row` to row `i`. Row `i` must be explicitly stored.
    pub(crate) fn add_scaled_row(&mut self, i: usize, s: T, start: usize, coeffs: &[T]) {
        let t0 = self.n - self.tail.len();
        let row = if i < self.head.len() {
            &mut self.head[i]
        } else if i >= t0 {
            &mut self.tail[i - t0]
        } else {
            panic!("row {i} is a stencil row");
        };
        let lo = row.start.min(start);
        let hi = (row.start + row.coeffs.len()).max(start + coeffs.len());
        let mut merged = vec![T::zero(); hi - lo];
        for (k, &c) in row.coeffs.iter().enumerate() {
            merged[row.start - lo + k] += c;
        }
        for (k, &c) in coeffs.iter().enumerate() {
            merged[start - lo + k] += s * c;
        }
        row.start = lo;
        row.coeffs = merged;
    }

    /// Product `self ∘ other`.
    pub fn compose(&self, other: &RowOperator<T>) -> RowOperator<T> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let head = self.head.len().max(other.head.len() + self.half_width);
        let tail = self.tail.len().max(other.tail.len() + self.half_width);
        let half = self.half_width + other.half_width;
        let (head, tail) = if head + tail >= n || head < half || tail < half {
            (n, 0)
        } else {
            (head, tail)
        };

        let product_row = |i: usize| -> Row<T> {
            let (start, coeffs) = self.row(i);
            let mut lo = usize::MAX;
            let mut hi = 0;
            for k in start..start + coeffs.len() {
                let (s, c) = other.row(k);
                lo = lo.min(s);
                hi = hi.max(s + c.len());
            }
            let mut acc = vec![T::zero(); hi - lo];
            for (dk, &a) in coeffs.iter().enumerate() {
                if a == T::zero() {
                    continue;
                }
                let (s, c) = other.row(start + dk);
                for (m, &b) in c.iter().enumerate() {
                    acc[s - lo + m] += a * b;
                }
            }
            Row { start: lo, coeffs: acc }
        };

        let head_rows: Vec<_> = (0..head).map(product_row).collect();
        let tail_rows: Vec<_> = (n - tail..n).map(product_row).collect();
        let mut stencil = vec![T::zero(); self.stencil.len() + other.stencil.len() - 1];
        for (a_i, &a) in self.stencil.iter().enumerate() {
            for (b_i, &b) in other.stencil.iter().enumerate() {
                stencil[a_i + b_i] += a * b;
            }
        }
        if head == n {
            return RowOperator {
                n,
                head: head_rows,
                tail: Vec::new(),
                half_width: stencil.len() / 2,
                stencil,
            };
        }
        RowOperator::new(n, head_rows, tail_rows, stencil)
    }

    /// Dense copy, row major. Intended for tests and small grids.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}
