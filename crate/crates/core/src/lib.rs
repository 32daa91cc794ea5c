//! Center/focus decisions for planar systems
//! `ẋ = −y + P_n(x, y)`, `ẏ = x + Q_n(x, y)` with homogeneous `P_n`, `Q_n`,
//! and for Abel equations `x' = f(t)x³ + g(t)x²`.
//!
//! Exact rational trigonometric polynomials carry the symbolic side
//! ([`trigpoly`], [`reduction`], [`certifier`]); the numerical side
//! ([`abel_solver`], [`planar_solver`]) gathers evidence and cross-checks.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod abel_solver;
pub mod certifier;
pub mod coefficient;
pub mod corpus;
pub mod ode;
pub mod planar_solver;
pub mod rational;
pub mod reduction;
pub mod trigpoly;

pub use abel_solver::{SolverConfig, SolverError};
pub use certifier::{Basis, Certificate, Verdict};
pub use coefficient::{Coefficient, SampledFn};
pub use rational::Rational;
pub use reduction::{AbelProblem, HomogPoly, PlanarSystem};
pub use trigpoly::{Parity, TrigPoly};
