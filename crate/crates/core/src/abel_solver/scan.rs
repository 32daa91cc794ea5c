use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{return_map, rho_admissible_bound, SolverConfig, SolverError};
use crate::reduction::AbelProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    CenterEvidence,
    FocusEvidence,
    Indeterminate,
}

/// Least-squares fit `log|d| ≈ log|c| + k log|ρ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub k: f64,
    /// Signed leading coefficient (sign of the displacements used).
    pub c: f64,
    pub r2: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisplacementReport {
    pub rho: Vec<f64>,
    pub pi_rho: Vec<f64>,
    pub d_rho: Vec<f64>,
    pub fit: Option<PowerFit>,
    pub classification: Classification,
}

#[derive(Serialize)]
struct ReportSummary {
    classification: Classification,
    k: Option<f64>,
    c: Option<f64>,
    fit_r2: Option<f64>,
    max_abs_d: f64,
}

impl DisplacementReport {
    pub fn max_abs_displacement(&self) -> f64 {
        self.d_rho.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    /// CSV `rho,pi_rho,d_rho` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,pi_rho,d_rho\n");
        for ((r, p), d) in self.rho.iter().zip(&self.pi_rho).zip(&self.d_rho) {
            let _ = writeln!(out, "{r:.16e},{p:.16e},{d:.16e}");
        }
        out
    }

    /// JSON summary `{classification, k, c, fit_r2, max_abs_d}`.
    pub fn summary_json(&self) -> serde_json::Value {
        let s = ReportSummary {
            classification: self.classification,
            k: self.fit.map(|f| f.k),
            c: self.fit.map(|f| f.c),
            fit_r2: self.fit.map(|f| f.r2),
            max_abs_d: self.max_abs_displacement(),
        };
        serde_json::to_value(s).expect("summary serializes")
    }
}

/// Displacement threshold below which a grid point counts as closed:
/// `abs_tol·10³ + rel_tol·10²·|ρ|`.
pub fn center_tolerance(rho: f64, cfg: &SolverConfig) -> f64 {
    cfg.abs_tol * 1e3 + cfg.rel_tol * 1e2 * rho.abs()
}

/// Eight log-spaced points from `0.005` to `min(0.08, 0.8·bound)`; when that upper
/// end falls below `0.005·16` the grid starts at `upper/16` instead.
pub fn default_rho_grid(prob: &AbelProblem, cfg: &SolverConfig) -> Vec<f64> {
    let upper = 0.08f64.min(0.8 * rho_admissible_bound(prob, cfg.ball_radius));
    let lower = 0.005f64.min(upper / 16.0);
    let ratio = (upper / lower).ln();
    (0..8).map(|i| lower * (ratio * i as f64 / 7.0).exp()).collect()
}

/// Power-law fit over points with `|d| > 100·abs_tol`.
pub fn fit_leading_order(rho: &[f64], d: &[f64], abs_tol: f64) -> Option<PowerFit> {
    let pts: Vec<(f64, f64, f64)> = rho
        .iter()
        .zip(d)
        .filter(|(r, d)| **r != 0.0 && d.abs() > 100.0 * abs_tol)
        .map(|(r, d)| (r.abs().ln(), d.abs().ln(), d.signum()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let k = sxy / sxx;
    let intercept = my - k * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - k * p.0).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    let sign = pts.last().map(|p| p.2).unwrap_or(1.0);
    Some(PowerFit { k, c: sign * intercept.exp(), r2, points: pts.len() })
}

fn classify(rho: &[f64], d: &[f64], fit: Option<&PowerFit>, cfg: &SolverConfig) -> Classification {
    if rho.iter().zip(d).all(|(r, d)| d.abs() < center_tolerance(*r, cfg)) {
        return Classification::CenterEvidence;
    }
    let same_sign = d.iter().all(|v| *v > 0.0) || d.iter().all(|v| *v < 0.0);
    let mut order: Vec<usize> = (0..rho.len()).collect();
    order.sort_by(|&i, &j| rho[i].abs().total_cmp(&rho[j].abs()));
    let monotone = order.windows(2).all(|w| d[w[1]].abs() >= d[w[0]].abs());
    let good_fit = fit.is_some_and(|f| f.points >= 3 && f.r2 > 0.99);
    if same_sign && monotone && good_fit {
        Classification::FocusEvidence
    } else {
        Classification::Indeterminate
    }
}

/// `d(ρ) = Π(ρ) − ρ` on the grid, computed concurrently; results keep grid order.
pub fn displacement_scan(
    prob: &AbelProblem,
    rho_grid: &[f64],
    cfg: &SolverConfig,
) -> Result<DisplacementReport, SolverError> {
    cfg.validate()?;
    let pi_rho = rho_grid.par_iter().map(|&r| return_map(prob, r, cfg)).collect::<Result<Vec<_>, _>>()?;
    let d_rho: Vec<f64> = pi_rho.iter().zip(rho_grid).map(|(p, r)| p - r).collect();
    let fit = fit_leading_order(rho_grid, &d_rho, cfg.abs_tol);
    let classification = classify(rho_grid, &d_rho, fit.as_ref(), cfg);
    Ok(DisplacementReport { rho: rho_grid.to_vec(), pi_rho, d_rho, fit, classification })
}
