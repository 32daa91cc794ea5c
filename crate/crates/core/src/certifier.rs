//! Symbolic decisions: parity certificates for planar systems and Abel
//! equations, the mean-of-A focus test, the `f'g − fg' = a·g³` condition, and
//! numerical evidence for the two integral conditions characterising a center.
//!
//! The certifier never reports a focus from a failed sufficient condition;
//! `Inconclusive` is the default.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abel_solver::{integrate_abel, rho_admissible_bound, simpson, SolverConfig, SolverError};
use crate::rational::Rational;
use crate::reduction::{abel_coefficients, compute_ab, AbelProblem, PlanarSystem};
use crate::trigpoly::{Parity, TrigPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedCenter,
    CertifiedFocus,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// `P_n(cos, sin)` odd and `Q_n(cos, sin)` even.
    TheoremP1,
    /// `f` and `g` odd.
    TheoremP5,
    /// `∫₀^{2π} A ≠ 0`.
    MeanANonzero,
    None,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_parity: Option<Parity>,
    /// Mean of `A` over one period, exact.
    #[serde(with = "crate::rational::serde_str::option", default, skip_serializing_if = "Option::is_none")]
    pub mean_a: Option<Rational>,
    /// The constant `a` in `f'g − fg' = a·g³`, when it exists.
    #[serde(with = "crate::rational::serde_str::option", default, skip_serializing_if = "Option::is_none")]
    pub llibre_constant: Option<Rational>,
    /// Set when a zero coefficient was counted as both odd and even.
    pub zero_parity_used: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub basis: Basis,
    pub evidence: Evidence,
}

impl Certificate {
    pub fn is_center(&self) -> bool {
        self.verdict == Verdict::CertifiedCenter
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Planar decision: parity certificate first, then the mean-of-A focus test.
pub fn classify_planar(sys: &PlanarSystem) -> Certificate {
    let p_parity = sys.p().to_trig().parity();
    let q_parity = sys.q().to_trig().parity();
    let (a, b) = compute_ab(sys);
    let (f, g) = abel_coefficients(sys.n(), &a, &b);
    let mean_a = a.mean_value();
    let mut evidence = Evidence {
        p_parity: Some(p_parity),
        q_parity: Some(q_parity),
        f_parity: Some(f.parity()),
        g_parity: Some(g.parity()),
        mean_a: Some(mean_a.clone()),
        llibre_constant: check_llibre_condition(&f, &g),
        zero_parity_used: false,
        notes: Vec::new(),
    };

    if p_parity.is_odd() && q_parity.is_even() {
        if p_parity == Parity::Zero || q_parity == Parity::Zero {
            evidence.zero_parity_used = true;
            evidence.notes.push("a zero P or Q was counted as both odd and even".into());
        }
        return Certificate { verdict: Verdict::CertifiedCenter, basis: Basis::TheoremP1, evidence };
    }
    if !mean_a.is_zero() {
        return Certificate { verdict: Verdict::CertifiedFocus, basis: Basis::MeanANonzero, evidence };
    }
    evidence.notes.push("parity conditions fail and the mean of A vanishes; center and focus both possible".into());
    Certificate { verdict: Verdict::Inconclusive, basis: Basis::None, evidence }
}

/// Abel decision: both coefficients odd certifies a center. Failure proves nothing.
pub fn classify_abel(prob: &AbelProblem) -> Certificate {
    let f_parity = prob.f.certified_parity(prob.half_width);
    let g_parity = prob.g.certified_parity(prob.half_width);
    let mut evidence = Evidence { f_parity: Some(f_parity), g_parity: Some(g_parity), ..Default::default() };
    if let Some((f, g)) = prob.trig_pair() {
        evidence.llibre_constant = check_llibre_condition(f, g);
    }
    if f_parity.is_odd() && g_parity.is_odd() {
        if f_parity == Parity::Zero || g_parity == Parity::Zero {
            evidence.zero_parity_used = true;
            evidence.notes.push("a zero coefficient was counted as odd".into());
        }
        return Certificate { verdict: Verdict::CertifiedCenter, basis: Basis::TheoremP5, evidence };
    }
    evidence.notes.push("coefficients are not both odd; the parity test is only sufficient".into());
    Certificate { verdict: Verdict::Inconclusive, basis: Basis::None, evidence }
}

/// `a` with `f'g − fg' = a·g³`, if one exists.
pub fn check_llibre_condition(f: &TrigPoly, g: &TrigPoly) -> Option<Rational> {
    wronskian(f, g).proportional_to_cube(g)
}

/// `f'g − fg'`.
pub fn wronskian(f: &TrigPoly, g: &TrigPoly) -> TrigPoly {
    f.derivative() * g - f * g.derivative()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaLyReport {
    /// `∫_{−a}^{a} g = 0`, exact when decidable symbolically.
    pub mean_g_zero: bool,
    pub mean_g_exact: bool,
    /// `max_ρ |∫_{−a}^{a} f(t) x(t, ρ) dt|` over the grid.
    pub max_f_moment: f64,
}

/// Evidence for the two integral conditions `∫g = 0` and `∫ f·x(·, ρ) = 0`
/// on a finite ρ grid; no verdict is implied.
pub fn lemma_ly_check(prob: &AbelProblem, rho_grid: &[f64], cfg: &SolverConfig) -> Result<LemmaLyReport, SolverError> {
    cfg.validate()?;
    let bound = rho_admissible_bound(prob, cfg.ball_radius);
    if let Some(&rho) = rho_grid.iter().find(|r| r.abs() >= bound) {
        return Err(SolverError::RhoNotAdmissible { rho, bound });
    }
    let a = prob.half_width;
    let h = 2.0 * a / cfg.grid_points as f64;
    let (mean_g_zero, mean_g_exact) = match prob.g.integral_vanishes_exactly() {
        Some(v) => (v, true),
        None => {
            let samples: Vec<f64> = crate::abel_solver::Trajectory::uniform_nodes(a, cfg.grid_points)
                .iter()
                .map(|&t| prob.g_at(t))
                .collect();
            let integral = simpson(&samples, h);
            (integral.abs() < 1e-10 * (1.0 + prob.g.sup_bound(a) * 2.0 * a), false)
        }
    };
    let moments = rho_grid
        .par_iter()
        .map(|&rho| {
            let tr = integrate_abel(prob, rho, cfg)?;
            let integrand: Vec<f64> = tr.nodes().iter().zip(tr.values()).map(|(&t, &x)| prob.f_at(t) * x).collect();
            Ok(simpson(&integrand, h).abs())
        })
        .collect::<Result<Vec<f64>, SolverError>>()?;
    let max_f_moment = moments.into_iter().fold(0.0, f64::max);
    Ok(LemmaLyReport { mean_g_zero, mean_g_exact, max_f_moment })
}
