//! Direct integration of the planar system, in Cartesian and in polar form,
//! and an end-to-end check of the Cherkas reduction.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::abel_solver::{SolverConfig, SolverError};
use crate::ode::{self, DenseStep, Flow, OdeError, Tolerances};
use crate::reduction::{abel_coefficients, cherkas_forward, cherkas_inverse, compute_ab, PlanarSystem, ReductionError};
use crate::trigpoly::TrigPoly;

/// Angles at which the Cherkas cross-check compares the two radii.
pub const CROSSCHECK_SAMPLES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("orbit left region R at t = {t}: angular speed {theta_dot}")]
    LeftRegionR { t: f64, theta_dot: f64 },
    #[error("orbit escaped at t = {t} (r = {r})")]
    BlowUp { t: f64, r: f64 },
    #[error("starting point must differ from the origin")]
    DegenerateStart,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

impl PlanarError {
    pub fn name(&self) -> &'static str {
        match self {
            PlanarError::LeftRegionR { .. } => "LeftRegionR",
            PlanarError::BlowUp { .. } => "BlowUp",
            PlanarError::DegenerateStart => "DegenerateStart",
            PlanarError::Solver(e) => e.name(),
            PlanarError::Reduction(e) => match e {
                ReductionError::OutsideRegionR { .. } | ReductionError::OutsideImage { .. } => "LeftRegionR",
                _ => "ReductionError",
            },
        }
    }
}

impl From<OdeError> for PlanarError {
    fn from(e: OdeError) -> Self {
        PlanarError::Solver(e.into())
    }
}

/// Orbit samples at the accepted steps, ending exactly on the return section.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarTrajectory {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Continuously accumulated polar angle.
    pub theta: Vec<f64>,
}

impl PlanarTrajectory {
    pub fn return_point(&self) -> (f64, f64) {
        (*self.x.last().unwrap(), *self.y.last().unwrap())
    }

    pub fn return_radius(&self) -> f64 {
        let (x, y) = self.return_point();
        x.hypot(y)
    }

    pub fn return_time(&self) -> f64 {
        *self.t.last().unwrap()
    }

    /// CSV `t,x,y,theta` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,theta\n");
        for i in 0..self.t.len() {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", self.t[i], self.x[i], self.y[i], self.theta[i]);
        }
        out
    }
}

fn tolerances(cfg: &SolverConfig) -> Tolerances {
    Tolerances { rel: cfg.rel_tol, abs: cfg.abs_tol, max_steps: cfg.max_steps }
}

fn planar_rhs(sys: &PlanarSystem, s: &[f64; 3]) -> [f64; 3] {
    let (x, y) = (s[0], s[1]);
    let (dx, dy) = sys.field(x, y);
    [dx, dy, (x * dy - y * dx) / (x * x + y * y)]
}

/// Integrates `ẋ = −y + P`, `ẏ = x + Q` from `(x0, y0)` until the polar angle
/// has advanced by one full turn.
pub fn integrate_planar(
    sys: &PlanarSystem,
    x0: f64,
    y0: f64,
    cfg: &SolverConfig,
) -> Result<PlanarTrajectory, PlanarError> {
    cfg.validate()?;
    let r0 = x0.hypot(y0);
    if !(r0 > 0.0) {
        return Err(PlanarError::DegenerateStart);
    }
    let theta0 = y0.atan2(x0);
    let target = theta0 + TAU;
    let escape = (100.0 * r0).max(1.0);
    let rhs = |_t: f64, s: &[f64; 3]| planar_rhs(sys, s);

    let mut tr = PlanarTrajectory { t: vec![0.0], x: vec![x0], y: vec![y0], theta: vec![theta0] };
    let mut failure = None;
    let mut crossing: Option<DenseStep<3>> = None;
    // θ̇ ≥ 1/2 inside the region the solver is meant for, so 1000 turns' worth of time is ample.
    let out = ode::integrate(rhs, 0.0, [x0, y0, theta0], 1000.0 * TAU, tolerances(cfg), |step| {
        let s = step.y1;
        let r = s[0].hypot(s[1]);
        if !(r < escape) {
            failure = Some(PlanarError::BlowUp { t: step.t1(), r });
            return Flow::Stop;
        }
        let theta_dot = planar_rhs(sys, &s)[2];
        if !(theta_dot > 0.0) {
            failure = Some(PlanarError::LeftRegionR { t: step.t1(), theta_dot });
            return Flow::Stop;
        }
        if s[2] >= target {
            crossing = Some(*step);
            return Flow::Stop;
        }
        tr.t.push(step.t1());
        tr.x.push(s[0]);
        tr.y.push(s[1]);
        tr.theta.push(s[2]);
        Flow::Continue
    });
    if let Some(e) = failure {
        return Err(e);
    }
    out?;
    let step = crossing.ok_or(PlanarError::LeftRegionR { t: 1000.0 * TAU, theta_dot: 0.0 })?;

    // Bisection on the dense θ(t) to 1e−12, then a short exact re-integration to the event time.
    let (mut lo, mut hi) = (step.t0, step.t1());
    while hi - lo > 1e-15 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let th = step.at(mid)[2];
        if (th - target).abs() <= 1e-12 {
            lo = mid;
            hi = mid;
            break;
        }
        if th < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_event = 0.5 * (lo + hi);
    let end = ode::integrate(rhs, step.t0, step.y0, t_event, tolerances(cfg), |_| Flow::Continue)?;
    tr.t.push(t_event);
    tr.x.push(end.y[0]);
    tr.y.push(end.y[1]);
    tr.theta.push(end.y[2]);
    Ok(tr)
}

/// Integrates `dr/dθ = A rⁿ / (1 + B r^{n−1})` over `θ ∈ [0, 2π]`.
pub fn polar_return_map(sys: &PlanarSystem, r0: f64, cfg: &SolverConfig) -> Result<f64, PlanarError> {
    let samples = polar_samples(sys, r0, &[TAU], cfg)?;
    Ok(samples[0])
}

fn region_guard(b: &TrigPoly, n: usize, theta: f64, r: f64) -> Result<(), PlanarError> {
    let theta_dot = 1.0 + b.eval(theta) * r.powi(n as i32 - 1);
    if theta_dot > 0.0 {
        Ok(())
    } else {
        Err(PlanarError::LeftRegionR { t: theta, theta_dot })
    }
}

/// Dense samples of a scalar θ-integration at increasing `angles` in `(0, 2π]`.
fn sample_scalar(
    rhs: impl Fn(f64, f64) -> f64,
    y0: f64,
    angles: &[f64],
    cfg: &SolverConfig,
    mut guard: impl FnMut(f64, f64) -> Result<(), PlanarError>,
) -> Result<Vec<f64>, PlanarError> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(angles.len());
    let mut next = 0;
    let mut failure = None;
    let end = ode::integrate(
        |t, y: &[f64; 1]| [rhs(t, y[0])],
        0.0,
        [y0],
        TAU,
        tolerances(cfg),
        |step| {
            if let Err(e) = guard(step.t1(), step.y1[0]) {
                failure = Some(e);
                return Flow::Stop;
            }
            while next < angles.len() && angles[next] <= step.t1() {
                out.push(if angles[next] == step.t1() { step.y1[0] } else { step.at(angles[next])[0] });
                next += 1;
            }
            Flow::Continue
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let end = end?;
    while out.len() < angles.len() {
        out.push(end.y[0]);
    }
    Ok(out)
}

fn polar_samples(sys: &PlanarSystem, r0: f64, angles: &[f64], cfg: &SolverConfig) -> Result<Vec<f64>, PlanarError> {
    let (a, b) = compute_ab(sys);
    let n = sys.n();
    region_guard(&b, n, 0.0, r0)?;
    let rhs = |th: f64, r: f64| {
        let rp = r.powi(n as i32 - 1);
        a.eval(th) * rp * r / (1.0 + b.eval(th) * rp)
    };
    sample_scalar(rhs, r0, angles, cfg, |th, r| region_guard(&b, n, th, r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub r0: f64,
    /// `max_k |r_γ(θ_k) − r(θ_k)|`.
    pub defect: f64,
    pub samples: usize,
}

/// Runs the polar equation and the Abel equation for `γ` side by side and
/// compares the radii at [`CROSSCHECK_SAMPLES`] angles `2πk/64`, `k = 1..=64`.
pub fn crosscheck_cherkas(sys: &PlanarSystem, r0: f64, cfg: &SolverConfig) -> Result<CrosscheckReport, PlanarError> {
    let angles: Vec<f64> = (1..=CROSSCHECK_SAMPLES).map(|k| TAU * k as f64 / CROSSCHECK_SAMPLES as f64).collect();
    let direct = polar_samples(sys, r0, &angles, cfg)?;

    let n = sys.n();
    let (a, b) = compute_ab(sys);
    let (f, g) = abel_coefficients(n, &a, &b);
    let gamma0 = cherkas_forward(r0, 0.0, &b, n)?;
    let gammas = sample_scalar(|th, x| (f.eval(th) * x + g.eval(th)) * x * x, gamma0, &angles, cfg, |_, _| Ok(()))?;

    let mut defect = 0.0f64;
    for ((&th, &gamma), &r) in angles.iter().zip(&gammas).zip(&direct) {
        let back = cherkas_inverse(gamma, th, &b, n)?;
        defect = defect.max((back - r).abs());
    }
    Ok(CrosscheckReport { r0, defect, samples: CROSSCHECK_SAMPLES })
}

/// `min(0.1, (1/(2‖B‖₁))^{1/(n−1)})`, which keeps `1 + B r^{n−1} ≥ ½`.
pub fn default_r0(sys: &PlanarSystem) -> f64 {
    let (_, b) = compute_ab(sys);
    let norm = b.linf_bound();
    if norm == 0.0 {
        return 0.1;
    }
    0.1f64.min((0.5 / norm).powf(1.0 / (sys.n() as f64 - 1.0)))
}
