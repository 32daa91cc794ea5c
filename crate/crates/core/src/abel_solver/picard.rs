use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{cumulative_simpson, rho_admissible_bound, SolverConfig, SolverError, Trajectory};
use crate::reduction::AbelProblem;

/// `f` and `g` tabulated on the uniform grid of a trajectory.
struct Grid<'a> {
    nodes: &'a [f64],
    f: Vec<f64>,
    g: Vec<f64>,
    h: f64,
}

impl<'a> Grid<'a> {
    fn for_trajectory(prob: &AbelProblem, x: &'a Trajectory) -> Result<Self, SolverError> {
        let a = prob.half_width;
        let intervals = x.nodes().len() - 1;
        let h = x.uniform_step().ok_or(SolverError::GridMismatch)?;
        let tol = 1e-9 * a.max(1.0);
        if !intervals.is_multiple_of(2) || (x.start() + a).abs() > tol || (x.end() - a).abs() > tol {
            return Err(SolverError::GridMismatch);
        }
        let nodes = x.nodes();
        Ok(Grid {
            nodes,
            f: nodes.iter().map(|&t| prob.f_at(t)).collect(),
            g: nodes.iter().map(|&t| prob.g_at(t)).collect(),
            h,
        })
    }

    fn apply(&self, rho: f64, x: &[f64]) -> Result<Vec<f64>, SolverError> {
        let integrand: Vec<f64> = x.iter().zip(self.f.iter().zip(&self.g)).map(|(xi, (fi, gi))| fi * xi + gi).collect();
        let integral = cumulative_simpson(&integrand, self.h);
        integral
            .iter()
            .zip(self.nodes)
            .map(|(i, &t)| {
                let denom = 1.0 - rho * i;
                if denom <= 0.25 {
                    Err(SolverError::DenominatorTooSmall { t, value: denom })
                } else {
                    Ok(rho / denom)
                }
            })
            .collect()
    }
}

/// One application of `Ω`, with the inner integral by composite Simpson on the
/// trajectory's grid (uniform, even interval count, spanning `[−a, a]`).
pub fn picard_operator(
    prob: &AbelProblem,
    rho: f64,
    x: &Trajectory,
    cfg: &SolverConfig,
) -> Result<Trajectory, SolverError> {
    cfg.validate()?;
    let grid = Grid::for_trajectory(prob, x)?;
    let values = grid.apply(rho, x.values())?;
    Ok(Trajectory::new(x.nodes().to_vec(), values))
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub trajectory: Trajectory,
    pub iterations: usize,
    /// Theoretical contraction rate `8aρ²F`.
    pub contraction_rate: f64,
    /// `‖Ω(x) − x‖∞` at the last iteration.
    pub last_update: f64,
}

/// Iterates `Ω` from `x₀ ≡ ρ` until successive iterates differ by less than
/// `cfg.picard_tol` in the sup norm.
pub fn picard_fixed_point(prob: &AbelProblem, rho: f64, cfg: &SolverConfig) -> Result<PicardSolution, SolverError> {
    cfg.validate()?;
    let (f_sup, _) = prob.sup_bounds();
    let rate = 8.0 * prob.half_width * rho * rho * f_sup;
    if rate >= 1.0 {
        return Err(SolverError::NotContractive { rate });
    }
    let bound = rho_admissible_bound(prob, cfg.ball_radius);
    if rho.abs() >= bound {
        return Err(SolverError::RhoNotAdmissible { rho, bound });
    }
    let mut x = Trajectory::constant(prob.half_width, cfg.grid_points, rho);
    let grid = Grid::for_trajectory(prob, &x)?;
    let nodes = x.nodes().to_vec();
    let mut current = x.values().to_vec();
    let mut last_update = f64::INFINITY;
    for iteration in 1..=cfg.picard_max_iter {
        let next = grid.apply(rho, &current)?;
        last_update = next.iter().zip(&current).fold(0.0, |m, (a, b)| m.max((a - b).abs()));
        current = next;
        if last_update < cfg.picard_tol {
            x = Trajectory::new(nodes, current);
            return Ok(PicardSolution { trajectory: x, iterations: iteration, contraction_rate: rate, last_update });
        }
    }
    Err(SolverError::NoConvergence { iterations: cfg.picard_max_iter, residual: last_update })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorBoundReport {
    /// Largest observed `‖Ω(x)‖∞`.
    pub max_sup: f64,
    /// Largest observed `‖Ω(x) − Ω(y)‖∞ / ‖x − y‖∞`.
    pub max_lipschitz_ratio: f64,
    /// `2|ρ|`.
    pub sup_bound: f64,
    /// `8aρ²F`.
    pub lipschitz_bound: f64,
    pub samples: usize,
}

/// A random continuous function with `‖x‖∞ ≤ radius`: a short random
/// trigonometric sum normalised by its coefficient ℓ¹ norm, or an extremal constant.
fn random_ball_element(rng: &mut ChaCha8Rng, a: f64, intervals: usize, radius: f64) -> Trajectory {
    if rng.gen_bool(0.15) {
        let c = if rng.gen_bool(0.5) { radius } else { -radius };
        return Trajectory::constant(a, intervals, c);
    }
    let harmonics = rng.gen_range(1..=5);
    let terms: Vec<(f64, f64, f64)> =
        (0..harmonics).map(|k| (k as f64, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let l1: f64 = terms.iter().map(|(_, c, s)| c.abs() + s.abs()).sum::<f64>().max(1e-12);
    let scale = radius * rng.gen_range(0.2..=1.0) / l1;
    Trajectory::from_fn(a, intervals, |t| {
        let th = std::f64::consts::PI * t / a;
        scale * terms.iter().map(|(k, c, s)| c * (k * th).cos() + s * (k * th).sin()).sum::<f64>()
    })
}

/// Samples `Ω` on random elements of the ball `‖x‖∞ ≤ M` and reports the worst
/// observed sup norm and Lipschitz ratio next to their theoretical bounds.
pub fn operator_bound_check(
    prob: &AbelProblem,
    rho: f64,
    cfg: &SolverConfig,
    sample_count: usize,
    seed: u64,
) -> Result<OperatorBoundReport, SolverError> {
    cfg.validate()?;
    let a = prob.half_width;
    let m = cfg.ball_radius;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probe = Trajectory::constant(a, cfg.grid_points, 0.0);
    let grid = Grid::for_trajectory(prob, &probe)?;
    let (f_sup, _) = prob.sup_bounds();
    let mut max_sup: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..sample_count {
        let x = random_ball_element(&mut rng, a, cfg.grid_points, m);
        let y = random_ball_element(&mut rng, a, cfg.grid_points, m);
        let ox = grid.apply(rho, x.values())?;
        let oy = grid.apply(rho, y.values())?;
        let sup = |v: &[f64]| v.iter().fold(0.0f64, |acc, z| acc.max(z.abs()));
        max_sup = max_sup.max(sup(&ox)).max(sup(&oy));
        let dist = x.sup_distance(&y);
        if dist > 0.0 {
            let d_out = ox.iter().zip(&oy).fold(0.0f64, |acc, (p, q)| acc.max((p - q).abs()));
            max_ratio = max_ratio.max(d_out / dist);
        }
    }
    Ok(OperatorBoundReport {
        max_sup,
        max_lipschitz_ratio: max_ratio,
        sup_bound: 2.0 * rho.abs(),
        lipschitz_bound: 8.0 * a * rho * rho * f_sup,
        samples: sample_count,
    })
}
