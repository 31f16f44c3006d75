//! Penalty-type interface coupling for the one-dimensional Schrödinger equation
//! `i ∂t Φ = ΔΦ + V Φ` on a circle.
//!
//! A single uniform grid is wrapped onto a circle and its two ends are joined
//! through an interface at `x = 0`. Only the endpoint values are exchanged: a
//! boundary correction cancels the energy flux produced by the summation-by-parts
//! (SBP) derivative, and an interaction-factor penalty pulls the two endpoint
//! values together. The resulting semi-discrete system conserves the SBP norm.
//!
//! The numerical core is generic over the real scalar type (`f32`/`f64`) via
//! [`Real`]; the experiment harness and CLI use the `f64` aliases exported here.
//!
//! Module map:
//! - [`grid`]: circle grid, wave functions, initial data, injection between grids
//! - [`sbp`]: diagonal-norm SBP operators, periodic stencils, weighted inner product
//! - [`scheme`]: periodic and interface right-hand sides, Kreiss-Oliger dissipation
//! - [`integrate`]: RK4, IMEX-SSP3(4,3,3), time-step policy, evolution loop
//! - [`diagnostics`]: norms, reference errors, convergence index, reflection metric
//! - [`harness`]: experiment presets, configuration, CSV outputs

pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod harness;
pub mod integrate;
pub mod real;
pub mod sbp;
pub mod scheme;

pub use error::{Error, Result};
pub use real::Real;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type GridCircleF64 = grid::GridCircle<f64>;
pub type WaveFunctionF64 = grid::WaveFunction<f64>;
pub type InitialDataF64 = grid::InitialData<f64>;
pub type SbpOperatorF64 = sbp::SbpOperator<f64>;
pub type PeriodicStencilF64 = sbp::PeriodicStencil<f64>;
pub type SchemeConfigF64 = scheme::SchemeConfig<f64>;
pub type InterfaceSchemeF64 = scheme::InterfaceScheme<f64>;
pub type PeriodicSchemeF64 = scheme::PeriodicScheme<f64>;
pub type ImexTableauF64 = integrate::ImexTableau<f64>;
pub type StepPolicyF64 = integrate::StepPolicy<f64>;
pub type TimeSeriesF64 = diagnostics::TimeSeries<f64>;
