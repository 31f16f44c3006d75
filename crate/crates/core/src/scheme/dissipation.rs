//! Kreiss-Oliger dissipation `−ε·dx⁷·(Δ_h)⁴`, with `Δ_h` the standard
//! second difference.
//!
//! On the interface grid the operator is written as `−ε H⁻¹ EᵀE` where row
//! `k` of `E` is the forward fourth difference at `k`, kept only while all
//! of its points stay at least 4 points away from either end. In the deep
//! interior this is exactly the centred `(Δ_h)⁴` stencil; near the ends it
//! tapers to zero and `Re<u, Mu>_σ = −ε|Eu|² ≤ 0` holds for every `u`.

use num_complex::Complex;

use crate::grid::{Representation, WaveFunction};
use crate::sbp::{apply_periodic_stencil, Row, RowOperator, SbpOperator};
use crate::{Real, Result};

const FOURTH: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
const EIGHTH: [f64; 9] = [1.0, -8.0, 28.0, -56.0, 70.0, -56.0, 28.0, -8.0, 1.0];
/// Points at each end where the term is switched off.
const GAP: usize = 4;

/// Periodic stencil `−(ε/dx)·δ⁸`.
pub(crate) fn periodic_stencil<T: Real>(dx: T, eps: T) -> Vec<T> {
    let s = -eps / dx;
    EIGHTH.iter().map(|&c| T::lit(c) * s).collect()
}

/// `−ε H⁻¹ EᵀE` on `sigma.len()` points.
pub(crate) fn interface_operator<T: Real>(sigma: &[T], dx: T, eps: T) -> RowOperator<T> {
    let n = sigma.len();
    // valid rows of E: k in [GAP, n - 1 - GAP - 4]
    let k_lo = GAP as isize;
    let k_hi = n as isize - 1 - GAP as isize - 4;
    let entry = |j: usize, l: usize| -> f64 {
        let (j, l) = (j as isize, l as isize);
        let lo = k_lo.max(j - 4).max(l - 4);
        let hi = k_hi.min(j).min(l);
        (lo..=hi).map(|k| FOURTH[(j - k) as usize] * FOURTH[(l - k) as usize]).sum()
    };
    let row = |j: usize| -> Row<T> {
        let start = j.saturating_sub(4);
        let end = (j + 4).min(n - 1);
        let s = -eps / (dx * sigma[j]);
        Row {
            start,
            coeffs: (start..=end).map(|l| T::lit(entry(j, l)) * s).collect(),
        }
    };
    let stencil: Vec<T> = EIGHTH.iter().map(|&c| T::lit(c) * (-eps / dx)).collect();
    // rows that differ from the plain stencil: j < 2·GAP and the mirror
    let edge = 2 * GAP;
    if n < 2 * edge + 1 {
        return RowOperator::new(n, (0..n).map(row).collect(), Vec::new(), stencil);
    }
    let mut head: Vec<Row<T>> = (0..edge).map(row).collect();
    let mut tail: Vec<Row<T>> = (n - edge..n).map(row).collect();
    // interior rows with σ_j ≠ 1 need explicit storage too
    let wide = sigma.iter().take(n / 2).take_while(|&&s| s != T::one()).count();
    if wide > edge {
        head = (0..wide).map(row).collect();
        tail = (n - wide..n).map(row).collect();
    }
    RowOperator::new(n, head, tail, stencil)
}

/// Kreiss-Oliger term on an interface state, using the operator's norm
/// weights.
pub fn ko_dissipation_interface<T: Real>(
    op: &SbpOperator<T>,
    epsilon: T,
    u: &WaveFunction<T>,
) -> Result<WaveFunction<T>> {
    u.expect_layout(Representation::Interface, "interface dissipation")?;
    let sigma = op.sigma(u.grid().n_intervals());
    let m = interface_operator(&sigma, u.grid().dx(), epsilon);
    let mut out = vec![Complex::new(T::zero(), T::zero()); u.len()];
    m.apply_into(u.values(), &mut out);
    u.with_values(out)
}

/// Kreiss-Oliger term on a periodic state.
pub fn ko_dissipation_periodic<T: Real>(epsilon: T, u: &WaveFunction<T>) -> Result<WaveFunction<T>> {
    u.expect_layout(Representation::Periodic, "periodic dissipation")?;
    let st = periodic_stencil(u.grid().dx(), epsilon);
    let mut out = vec![Complex::new(T::zero(), T::zero()); u.len()];
    apply_periodic_stencil(&st, u.values(), &mut out);
    u.with_values(out)
}
