//! Coefficient functions `f(t)`, `g(t)` of an Abel equation on `[−a, a]`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::rational::{self, Rational};
use crate::trigpoly::{Parity, TrigPoly};

/// Points used by the numeric parity spot-check for sampled coefficients.
pub const PARITY_SPOT_CHECKS: usize = 100;
/// Tolerance of that spot-check, `|f(−t) ∓ f(t)|`.
pub const PARITY_SPOT_TOL: f64 = 1e-10;

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A function given only by evaluation, together with a caller-supplied sup bound
/// and (optionally) a declared parity.
#[derive(Clone)]
pub struct SampledFn {
    pub label: String,
    func: Arc<ScalarFn>,
    pub sup_bound: f64,
    pub declared: Option<Parity>,
}

impl SampledFn {
    pub fn new(
        label: impl Into<String>,
        sup_bound: f64,
        declared: Option<Parity>,
        func: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SampledFn { label: label.into(), func: Arc::new(func), sup_bound, declared }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.func)(t)
    }
}

impl fmt::Debug for SampledFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFn")
            .field("label", &self.label)
            .field("sup_bound", &self.sup_bound)
            .field("declared", &self.declared)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum Coefficient {
    /// `p(π t / a)`: a trigonometric polynomial spanning exactly one period of `[−a, a]`.
    /// Planar-derived problems have `a = π`, so this is `p(t)`.
    Trig(TrigPoly),
    /// `Σ c_k t^k`.
    Poly(Vec<Rational>),
    Sum(Vec<Coefficient>),
    Sampled(SampledFn),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Trig(TrigPoly::zero())
    }

    pub fn eval(&self, t: f64, half_width: f64) -> f64 {
        match self {
            Coefficient::Trig(p) => p.eval(PI * t / half_width),
            Coefficient::Poly(c) => c.iter().rev().fold(0.0, |acc, ck| acc * t + rational::to_f64(ck)),
            Coefficient::Sum(parts) => parts.iter().map(|p| p.eval(t, half_width)).sum(),
            Coefficient::Sampled(s) => s.eval(t),
        }
    }

    /// Upper bound for `sup_{[−a,a]} |c|`.
    pub fn sup_bound(&self, half_width: f64) -> f64 {
        match self {
            Coefficient::Trig(p) => p.linf_bound(),
            Coefficient::Poly(c) => {
                c.iter().enumerate().map(|(k, ck)| rational::abs_f64(ck) * half_width.powi(k as i32)).sum()
            }
            Coefficient::Sum(parts) => parts.iter().map(|p| p.sup_bound(half_width)).sum(),
            Coefficient::Sampled(s) => s.sup_bound,
        }
    }

    /// Parity decided from exact coefficients; `None` for sampled pieces.
    pub fn exact_parity(&self) -> Option<Parity> {
        match self {
            Coefficient::Trig(p) => Some(p.parity()),
            Coefficient::Poly(c) => {
                let has_even = c.iter().step_by(2).any(|x| !x.is_zero());
                let has_odd = c.iter().skip(1).step_by(2).any(|x| !x.is_zero());
                Some(match (has_even, has_odd) {
                    (false, false) => Parity::Zero,
                    (true, false) => Parity::Even,
                    (false, true) => Parity::Odd,
                    (true, true) => Parity::Neither,
                })
            }
            Coefficient::Sum(parts) => {
                parts.iter().map(Coefficient::exact_parity).collect::<Option<Vec<_>>>().map(Parity::of_sum)
            }
            Coefficient::Sampled(_) => None,
        }
    }

    /// Parity usable for certification.
    ///
    /// Exact pieces are classified by coefficient inspection. A sampled piece
    /// contributes its declared parity only if a spot-check on
    /// [`PARITY_SPOT_CHECKS`] points confirms it; otherwise it is `Neither`.
    pub fn certified_parity(&self, half_width: f64) -> Parity {
        match self {
            Coefficient::Sum(parts) => Parity::of_sum(parts.iter().map(|p| p.certified_parity(half_width))),
            Coefficient::Sampled(s) => match s.declared {
                Some(declared) if spot_check(s, declared, half_width) => declared,
                _ => Parity::Neither,
            },
            exact => exact.exact_parity().unwrap_or(Parity::Neither),
        }
    }

    /// Exact answer to "is `∫_{−a}^{a} c = 0`?" when it can be decided symbolically.
    pub fn integral_vanishes_exactly(&self) -> Option<bool> {
        match self {
            Coefficient::Trig(p) => Some(p.mean_value().is_zero()),
            Coefficient::Poly(c) => {
                if c.iter().step_by(2).all(|x| x.is_zero()) {
                    Some(true)
                } else {
                    None
                }
            }
            Coefficient::Sum(parts) => {
                let all: Option<Vec<bool>> = parts.iter().map(Coefficient::integral_vanishes_exactly).collect();
                match all {
                    Some(v) if v.iter().all(|&b| b) => Some(true),
                    _ => None,
                }
            }
            Coefficient::Sampled(_) => None,
        }
    }

    pub fn as_trig(&self) -> Option<&TrigPoly> {
        match self {
            Coefficient::Trig(p) => Some(p),
            _ => None,
        }
    }
}

impl From<TrigPoly> for Coefficient {
    fn from(p: TrigPoly) -> Self {
        Coefficient::Trig(p)
    }
}

fn spot_check(s: &SampledFn, declared: Parity, half_width: f64) -> bool {
    let n = PARITY_SPOT_CHECKS;
    (0..n).all(|i| {
        // interior points, irrational-ish spacing so they miss symmetric nodes
        let t = half_width * ((i as f64 + 0.5) / n as f64) * (1.0 - 1e-3 * ((i * 7919) % 13) as f64);
        let (plus, minus) = (s.eval(t), s.eval(-t));
        match declared {
            Parity::Odd => (plus + minus).abs() < PARITY_SPOT_TOL,
            Parity::Even => (plus - minus).abs() < PARITY_SPOT_TOL,
            Parity::Zero => plus.abs() < PARITY_SPOT_TOL && minus.abs() < PARITY_SPOT_TOL,
            Parity::Neither => true,
        }
    })
}
