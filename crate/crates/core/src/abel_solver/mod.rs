//! Numerical dynamics of `x' = f(t) x³ + g(t) x²` on `[−a, a]` with `x(−a) = ρ`.
//!
//! Two independent routes are provided: an adaptive Runge–Kutta integration of
//! the initial-value problem, and fixed-point iteration of the integral operator
//!
//! ```text
//! Ω(x)(t) = ρ / (1 − ρ ∫_{−a}^{t} (f(s) x(s) + g(s)) ds),
//! ```
//!
//! which is well defined, maps the ball `‖x‖∞ ≤ M` into itself and contracts at
//! rate `8aρ²F` whenever `0 ≤ ρ < min{M/2, 1/(4a(FM + G))}`.

mod picard;
mod scan;
mod trajectory;

pub use picard::{operator_bound_check, picard_fixed_point, picard_operator, OperatorBoundReport, PicardSolution};
pub use scan::{
    center_tolerance, default_rho_grid, displacement_scan, fit_leading_order, Classification, DisplacementReport,
    PowerFit,
};
pub use trajectory::Trajectory;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ode::{self, Flow, OdeError, Tolerances};
use crate::reduction::AbelProblem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("solution blew up: |x| = {x:e} at t = {t} exceeds 10·M")]
    BlowUp { t: f64, x: f64 },
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("exceeded the step budget of {max_steps} at t = {t}")]
    MaxStepsExceeded { max_steps: usize, t: f64 },
    #[error("Picard denominator {value} at t = {t} fell to 1/4 or below")]
    DenominatorTooSmall { t: f64, value: f64 },
    #[error("Picard map is not contractive: 8aρ²F = {rate}")]
    NotContractive { rate: f64 },
    #[error("Picard iteration did not converge in {iterations} iterations (last update {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("ρ = {rho} is outside the admissible bound {bound}")]
    RhoNotAdmissible { rho: f64, bound: f64 },
    #[error("trajectory grid is not a uniform grid with an even number of intervals over [−a, a]")]
    GridMismatch,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

impl SolverError {
    /// Stable variant name, surfaced by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            SolverError::BlowUp { .. } => "BlowUp",
            SolverError::StepUnderflow { .. } => "StepUnderflow",
            SolverError::MaxStepsExceeded { .. } => "MaxStepsExceeded",
            SolverError::DenominatorTooSmall { .. } => "DenominatorTooSmall",
            SolverError::NotContractive { .. } => "NotContractive",
            SolverError::NoConvergence { .. } => "NoConvergence",
            SolverError::RhoNotAdmissible { .. } => "RhoNotAdmissible",
            SolverError::GridMismatch => "GridMismatch",
            SolverError::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

impl From<OdeError> for SolverError {
    fn from(e: OdeError) -> Self {
        match e {
            OdeError::StepUnderflow { t, .. } | OdeError::NonFinite { t } => SolverError::StepUnderflow { t },
            OdeError::MaxStepsExceeded { max_steps, t } => SolverError::MaxStepsExceeded { max_steps, t },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub picard_tol: f64,
    pub picard_max_iter: usize,
    /// Radius of the ball `‖x‖∞ ≤ M` the Picard operator acts on.
    #[serde(rename = "m")]
    pub ball_radius: f64,
    /// Number of uniform intervals used to store functions on `[−a, a]` (even).
    pub grid_points: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            picard_tol: 1e-12,
            picard_max_iter: 200,
            ball_radius: 1.0,
            grid_points: 2048,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let positive = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("picard_tol", self.picard_tol),
            ("m", self.ball_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SolverError::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.grid_points < 2 || !self.grid_points.is_multiple_of(2) {
            return Err(SolverError::InvalidConfig(format!(
                "grid_points must be even and at least 2, got {}",
                self.grid_points
            )));
        }
        if self.max_steps == 0 || self.picard_max_iter == 0 {
            return Err(SolverError::InvalidConfig("step and iteration budgets must be positive".into()));
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances { rel: self.rel_tol, abs: self.abs_tol, max_steps: self.max_steps }
    }
}

/// `min{M/2, 1/(4a(F·M + G))}` with `F`, `G` the coefficient sup bounds; when
/// `F·M + G = 0` only `M/2` binds.
pub fn rho_admissible_bound(prob: &AbelProblem, m: f64) -> f64 {
    let (f, g) = prob.sup_bounds();
    let denom = 4.0 * prob.half_width * (f * m + g);
    if denom > 0.0 {
        (m / 2.0).min(1.0 / denom)
    } else {
        m / 2.0
    }
}

fn integrate_with<O: FnMut(&ode::DenseStep<1>)>(
    prob: &AbelProblem,
    rho: f64,
    cfg: &SolverConfig,
    mut on_step: O,
) -> Result<f64, SolverError> {
    cfg.validate()?;
    let bound = rho_admissible_bound(prob, cfg.ball_radius);
    if rho.abs() >= bound {
        log::warn!("ρ = {rho} is not below the admissible bound {bound}");
    }
    let a = prob.half_width;
    if rho == 0.0 {
        return Ok(0.0);
    }
    let limit = 10.0 * cfg.ball_radius;
    let mut blow_up = None;
    let mut last_x = rho;
    let out = ode::integrate(
        |t, x: &[f64; 1]| [prob.rhs(t, x[0])],
        -a,
        [rho],
        a,
        cfg.tolerances(),
        |step| {
            if step.y1[0].abs() > limit {
                blow_up = Some(SolverError::BlowUp { t: step.t1(), x: step.y1[0] });
                return Flow::Stop;
            }
            last_x = step.y1[0];
            on_step(step);
            Flow::Continue
        },
    );
    if let Some(e) = blow_up {
        return Err(e);
    }
    match out {
        Ok(o) => Ok(o.y[0]),
        // Step-size collapse after leaving the ball is a blow-up in progress.
        Err(OdeError::StepUnderflow { t, .. } | OdeError::NonFinite { t }) if last_x.abs() > cfg.ball_radius => {
            Err(SolverError::BlowUp { t, x: last_x })
        }
        Err(e) => Err(e.into()),
    }
}

/// Adaptive RK solution of `x(−a) = ρ`, densely sampled on `cfg.grid_points`
/// uniform intervals.
pub fn integrate_abel(prob: &AbelProblem, rho: f64, cfg: &SolverConfig) -> Result<Trajectory, SolverError> {
    cfg.validate()?;
    let nodes = Trajectory::uniform_nodes(prob.half_width, cfg.grid_points);
    let mut values = vec![0.0; nodes.len()];
    values[0] = rho;
    let mut next = 1;
    let last = integrate_with(prob, rho, cfg, |step| {
        let t1 = step.t1();
        while next < nodes.len() - 1 && nodes[next] <= t1 {
            values[next] = step.at(nodes[next])[0];
            next += 1;
        }
    })?;
    let n = values.len();
    values[n - 1] = last;
    Ok(Trajectory::new(nodes, values))
}

/// `Π(ρ) = x(a)`.
pub fn return_map(prob: &AbelProblem, rho: f64, cfg: &SolverConfig) -> Result<f64, SolverError> {
    integrate_with(prob, rho, cfg, |_| {})
}

/// `max |x(t) − x(−t)|` over the nodes.
pub fn evenness_defect(x: &Trajectory) -> f64 {
    let nodes = x.nodes();
    let values = x.values();
    let n = nodes.len();
    let symmetric = (0..n).all(|i| (nodes[i] + nodes[n - 1 - i]).abs() <= 1e-12 * nodes[n - 1].abs().max(1.0));
    (0..n)
        .map(|i| {
            let mirrored = if symmetric { values[n - 1 - i] } else { x.value_at(-nodes[i]) };
            (values[i] - mirrored).abs()
        })
        .fold(0.0, f64::max)
}

/// Composite Simpson integral over a uniform grid with an even interval count.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n.is_multiple_of(2));
    let inner: f64 = (1..n).map(|i| if i % 2 == 1 { 4.0 * values[i] } else { 2.0 * values[i] }).sum();
    h / 3.0 * (values[0] + inner + values[n])
}

/// Running integral `∫_{t₀}^{t_i}` at every node, Simpson pairs for even nodes
/// and a one-interval quadratic rule for odd ones (both O(h⁴)).
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len() - 1;
    let mut out = vec![0.0; n + 1];
    let mut i = 0;
    while i + 2 <= n {
        let (w0, w1, w2) = (values[i], values[i + 1], values[i + 2]);
        out[i + 1] = out[i] + h / 12.0 * (5.0 * w0 + 8.0 * w1 - w2);
        out[i + 2] = out[i] + h / 3.0 * (w0 + 4.0 * w1 + w2);
        i += 2;
    }
    if i < n {
        // odd interval count: close with the trapezoid rule
        out[n] = out[i] + 0.5 * h * (values[i] + values[n]);
    }
    out
}
