use crate::{Error, Real, Result};

/// Butcher tables of an additive (IMEX) Runge-Kutta method with shared
/// weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ImexTableau<T> {
    /// Strictly lower triangular.
    pub explicit: Vec<Vec<T>>,
    /// Lower triangular with one repeated diagonal entry.
    pub implicit: Vec<Vec<T>>,
    pub weights: Vec<T>,
    pub c_explicit: Vec<T>,
    pub c_implicit: Vec<T>,
}

const ALPHA: f64 = 0.24169426078821;
const BETA: f64 = 0.06042356519705;
const ETA: f64 = 0.1291528696059;

impl<T: Real> ImexTableau<T> {
    /// IMEX-SSP3(4,3,3) of Pareschi and Russo: SSP-RK3 explicit part,
    /// L-stable singly diagonally implicit part.
    pub fn ssp3_433() -> Self {
        let l = T::lit;
        let (a, b, e) = (l(ALPHA), l(BETA), l(ETA));
        let z = T::zero();
        let half = l(0.5);
        Self {
            explicit: vec![
                vec![z, z, z, z],
                vec![z, z, z, z],
                vec![z, T::one(), z, z],
                vec![z, l(0.25), l(0.25), z],
            ],
            implicit: vec![
                vec![a, z, z, z],
                vec![-a, a, z, z],
                vec![z, T::one() - a, a, z],
                vec![b, e, half - b - e - a, a],
            ],
            weights: vec![z, T::one() / l(6.0), T::one() / l(6.0), l(2.0) / l(3.0)],
            c_explicit: vec![z, z, T::one(), half],
            c_implicit: vec![a, z, T::one(), half],
        }
    }

    pub fn stages(&self) -> usize {
        self.weights.len()
    }

    /// The repeated diagonal entry of the implicit table.
    pub fn diagonal(&self) -> T {
        self.implicit[0][0]
    }

    /// Checks shape, triangularity, row sums against abscissae, unit weight
    /// sum and the single-diagonal structure.
    pub fn validate(&self, tol: T) -> Result<()> {
        let s = self.stages();
        let bad = |what: String| Err(Error::Config(format!("invalid IMEX tableau: {what}")));
        let square = |m: &Vec<Vec<T>>| m.len() == s && m.iter().all(|r| r.len() == s);
        if !square(&self.explicit)
            || !square(&self.implicit)
            || self.c_explicit.len() != s
            || self.c_implicit.len() != s
        {
            return bad("inconsistent dimensions".into());
        }
        for i in 0..s {
            if (i..s).any(|j| self.explicit[i][j] != T::zero()) {
                return bad(format!("explicit row {i} is not strictly lower triangular"));
            }
            if (i + 1..s).any(|j| self.implicit[i][j] != T::zero()) {
                return bad(format!("implicit row {i} is not lower triangular"));
            }
            if self.implicit[i][i] != self.diagonal() {
                return bad(format!("implicit diagonal entry {i} differs"));
            }
            let se: T = self.explicit[i].iter().copied().sum();
            let si: T = self.implicit[i].iter().copied().sum();
            if (se - self.c_explicit[i]).abs() > tol {
                return bad(format!("explicit row {i} sums to {se}, abscissa {}", self.c_explicit[i]));
            }
            if (si - self.c_implicit[i]).abs() > tol {
                return bad(format!("implicit row {i} sums to {si}, abscissa {}", self.c_implicit[i]));
            }
        }
        if !(self.diagonal() > T::zero()) {
            return bad("implicit diagonal must be positive".into());
        }
        let w: T = self.weights.iter().copied().sum();
        if (w - T::one()).abs() > tol {
            return bad(format!("weights sum to {w}"));
        }
        Ok(())
    }
}
