//! From the planar system `ẋ = −y + P_n(x, y)`, `ẏ = x + Q_n(x, y)` to polar
//! form, the Cherkas variable `γ = r^{n−1}/(1 + B(θ) r^{n−1})`, and the Abel
//! equation `γ' = f γ³ + g γ²` it induces. All symbolic steps are exact.

use std::f64::consts::PI;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::rational::{self, Rational};
use crate::trigpoly::TrigPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("P has degree {p} and Q has degree {q}; both must equal n = {n}")]
    DegreeMismatch { n: usize, p: usize, q: usize },
    #[error("degree n = {0} is below 2")]
    DegreeTooLow(usize),
    #[error("point (r = {r}, θ = {theta}) lies outside region R: 1 + B(θ)r^(n−1) = {denominator}")]
    OutsideRegionR { r: f64, theta: f64, denominator: f64 },
    #[error("γ = {gamma} at θ = {theta} lies outside the image of region R: 1 − B(θ)γ = {denominator}")]
    OutsideImage { gamma: f64, theta: f64, denominator: f64 },
}

/// Homogeneous bivariate polynomial `Σ_j c_j x^{n−j} y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomogPoly {
    #[serde(with = "crate::rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl HomogPoly {
    /// Coefficients in ascending powers of `y`; the degree is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous polynomial needs at least one coefficient");
        HomogPoly { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        HomogPoly { coeffs: vec![Rational::zero(); n + 1] }
    }

    /// `c · x^{n−j} y^j`.
    pub fn monomial(n: usize, j: usize, c: Rational) -> Self {
        assert!(j <= n);
        let mut p = Self::zero(n);
        p.coeffs[j] = c;
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.degree() as i32;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| rational::to_f64(c) * x.powi(n - j as i32) * y.powi(j as i32))
            .sum()
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let mut out = Self::zero(self.degree() + other.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> HomogPoly {
        HomogPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `θ ↦ p(cos θ, sin θ)` expanded exactly in the Fourier basis.
    pub fn to_trig(&self) -> TrigPoly {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| monomial_trig(c, n - j, j))
            .fold(TrigPoly::zero(), |acc, t| acc + t)
    }
}

/// Exact Fourier form of `c · cos^i θ · sin^j θ`.
pub fn monomial_trig(c: &Rational, cos_pow: usize, sin_pow: usize) -> TrigPoly {
    let base = TrigPoly::cos_theta().pow(cos_pow as u32) * TrigPoly::sin_theta().pow(sin_pow as u32);
    base.scale(c)
}

/// Fourier form of a sum of monomial trig products `Σ c · cos^i θ · sin^j θ`.
pub fn trig_from_monomials<'a>(terms: impl IntoIterator<Item = (&'a Rational, usize, usize)>) -> TrigPoly {
    terms.into_iter().map(|(c, i, j)| monomial_trig(c, i, j)).fold(TrigPoly::zero(), |acc, t| acc + t)
}

/// Free-function form of [`HomogPoly::to_trig`].
pub fn homog_to_trig(p: &HomogPoly) -> TrigPoly {
    p.to_trig()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PlanarSystemJson", into = "PlanarSystemJson")]
pub struct PlanarSystem {
    n: usize,
    p: HomogPoly,
    q: HomogPoly,
}

#[derive(Serialize, Deserialize)]
struct PlanarSystemJson {
    n: usize,
    #[serde(rename = "P")]
    p: HomogPoly,
    #[serde(rename = "Q")]
    q: HomogPoly,
}

impl TryFrom<PlanarSystemJson> for PlanarSystem {
    type Error = ReductionError;

    fn try_from(raw: PlanarSystemJson) -> Result<Self, Self::Error> {
        let sys = PlanarSystem::new(raw.p, raw.q)?;
        if sys.n != raw.n {
            return Err(ReductionError::DegreeMismatch { n: raw.n, p: sys.p.degree(), q: sys.q.degree() });
        }
        Ok(sys)
    }
}

impl From<PlanarSystem> for PlanarSystemJson {
    fn from(s: PlanarSystem) -> Self {
        PlanarSystemJson { n: s.n, p: s.p, q: s.q }
    }
}

impl PlanarSystem {
    pub fn new(p: HomogPoly, q: HomogPoly) -> Result<Self, ReductionError> {
        let n = p.degree();
        if q.degree() != n {
            return Err(ReductionError::DegreeMismatch { n, p: n, q: q.degree() });
        }
        if n < 2 {
            return Err(ReductionError::DegreeTooLow(n));
        }
        Ok(PlanarSystem { n, p, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &HomogPoly {
        &self.p
    }

    pub fn q(&self) -> &HomogPoly {
        &self.q
    }

    /// Cartesian vector field `(−y + P_n, x + Q_n)`.
    pub fn field(&self, x: f64, y: f64) -> (f64, f64) {
        (-y + self.p.eval(x, y), x + self.q.eval(x, y))
    }
}

/// Polar coefficients `A = cosθ·P_n + sinθ·Q_n`, `B = cosθ·Q_n − sinθ·P_n`
/// evaluated on the unit circle.
pub fn compute_ab(sys: &PlanarSystem) -> (TrigPoly, TrigPoly) {
    let p = sys.p.to_trig();
    let q = sys.q.to_trig();
    let c = TrigPoly::cos_theta();
    let s = TrigPoly::sin_theta();
    let a = &c * &p + &s * &q;
    let b = &c * &q - &s * &p;
    (a, b)
}

/// Where an Abel problem came from.
#[derive(Debug, Clone)]
pub enum Origin {
    PlanarDerived { n: usize, a: TrigPoly, b: TrigPoly },
    FreeStanding,
}

/// `x' = f(t) x³ + g(t) x²` on `[−a, a]`.
#[derive(Debug, Clone)]
pub struct AbelProblem {
    pub f: Coefficient,
    pub g: Coefficient,
    pub half_width: f64,
    pub origin: Origin,
}

impl AbelProblem {
    pub fn free(f: Coefficient, g: Coefficient, half_width: f64) -> Self {
        assert!(half_width > 0.0 && half_width.is_finite(), "half-width must be positive");
        AbelProblem { f, g, half_width, origin: Origin::FreeStanding }
    }

    pub fn f_at(&self, t: f64) -> f64 {
        self.f.eval(t, self.half_width)
    }

    pub fn g_at(&self, t: f64) -> f64 {
        self.g.eval(t, self.half_width)
    }

    pub fn rhs(&self, t: f64, x: f64) -> f64 {
        let x2 = x * x;
        self.f_at(t) * x2 * x + self.g_at(t) * x2
    }

    /// Sup bounds `(F, G)` of the coefficients on `[−a, a]`.
    pub fn sup_bounds(&self) -> (f64, f64) {
        (self.f.sup_bound(self.half_width), self.g.sup_bound(self.half_width))
    }

    /// `(f, g)` when both are exact trigonometric polynomials.
    pub fn trig_pair(&self) -> Option<(&TrigPoly, &TrigPoly)> {
        Some((self.f.as_trig()?, self.g.as_trig()?))
    }
}

/// The Abel coefficients `f = −(n−1)AB`, `g = (n−1)A − B'`.
pub fn abel_coefficients(n: usize, a: &TrigPoly, b: &TrigPoly) -> (TrigPoly, TrigPoly) {
    let m = rational::from_i64(n as i64 - 1);
    let f = (a * b).scale(&-m.clone());
    let g = a.scale(&m) - b.derivative();
    (f, g)
}

/// Reduces a planar system to its Abel equation on the recentered period `[−π, π]`.
pub fn abel_from_planar(sys: &PlanarSystem) -> AbelProblem {
    let (a, b) = compute_ab(sys);
    let (f, g) = abel_coefficients(sys.n, &a, &b);
    AbelProblem {
        f: Coefficient::Trig(f),
        g: Coefficient::Trig(g),
        half_width: PI,
        origin: Origin::PlanarDerived { n: sys.n, a, b },
    }
}

/// `γ = r^{n−1} / (1 + B(θ) r^{n−1})`, defined inside region R.
pub fn cherkas_forward(r: f64, theta: f64, b: &TrigPoly, n: usize) -> Result<f64, ReductionError> {
    let rp = r.powi(n as i32 - 1);
    let denominator = 1.0 + b.eval(theta) * rp;
    if !(denominator > 0.0) {
        return Err(ReductionError::OutsideRegionR { r, theta, denominator });
    }
    Ok(rp / denominator)
}

/// Inverse Cherkas map, `r = (γ / (1 − B(θ)γ))^{1/(n−1)}`, taking the nonnegative root.
pub fn cherkas_inverse(gamma: f64, theta: f64, b: &TrigPoly, n: usize) -> Result<f64, ReductionError> {
    let denominator = 1.0 - b.eval(theta) * gamma;
    if !(denominator > 0.0) || gamma < 0.0 {
        return Err(ReductionError::OutsideImage { gamma, theta, denominator });
    }
    let base = gamma / denominator;
    Ok(if n == 2 { base } else { base.powf(1.0 / (n as f64 - 1.0)) })
}
