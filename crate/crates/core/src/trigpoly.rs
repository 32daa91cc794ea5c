//! Exact real trigonometric polynomials
//! `p(θ) = a₀ + Σ_{k=1..N} (a_k cos kθ + b_k sin kθ)` with rational coefficients.
//!
//! Values are kept in canonical form: trailing zero harmonics are trimmed, so
//! the zero polynomial has degree 0 and `a₀ = 0`. Parity is defined through the
//! 2π-periodic extension: odd means a pure sine series, even a pure cosine
//! series (constant included).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, half, Rational};

/// Symmetry class of a coefficient function under `θ ↦ −θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    /// The zero function; it is both even and odd.
    Zero,
    Neither,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd | Parity::Zero)
    }

    pub fn is_even(self) -> bool {
        matches!(self, Parity::Even | Parity::Zero)
    }

    /// Parity of a sum whose terms have the given parities.
    pub fn of_sum(parts: impl IntoIterator<Item = Parity>) -> Parity {
        parts.into_iter().fold(Parity::Zero, |acc, p| match (acc, p) {
            (Parity::Zero, q) | (q, Parity::Zero) => q,
            (Parity::Even, Parity::Even) => Parity::Even,
            (Parity::Odd, Parity::Odd) => Parity::Odd,
            _ => Parity::Neither,
        })
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TrigPoly {
    // cos[k] = a_k for k = 0..=N; sin[k] = b_k with sin[0] always zero.
    cos: Vec<Rational>,
    sin: Vec<Rational>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly { cos: vec![Rational::zero()], sin: vec![Rational::zero()] }
    }

    pub fn constant(c: Rational) -> Self {
        TrigPoly { cos: vec![c], sin: vec![Rational::zero()] }
    }

    /// `c·cos kθ` (for `k = 0` this is the constant `c`).
    pub fn cos_term(k: usize, c: Rational) -> Self {
        let mut p = Self::with_degree(k);
        p.cos[k] = c;
        p.canonical()
    }

    /// `c·sin kθ`; `sin 0θ` is identically zero.
    pub fn sin_term(k: usize, c: Rational) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut p = Self::with_degree(k);
        p.sin[k] = c;
        p.canonical()
    }

    pub fn cos_theta() -> Self {
        Self::cos_term(1, rational::one())
    }

    pub fn sin_theta() -> Self {
        Self::sin_term(1, rational::one())
    }

    /// Builds from `a₀..a_N` and `b₁..b_N`; the shorter list is zero-padded.
    pub fn from_coeffs(a: Vec<Rational>, b: Vec<Rational>) -> Self {
        let n = a.len().saturating_sub(1).max(b.len());
        let mut p = Self::with_degree(n);
        for (k, c) in a.into_iter().enumerate() {
            p.cos[k] = c;
        }
        for (k, c) in b.into_iter().enumerate() {
            p.sin[k + 1] = c;
        }
        p.canonical()
    }

    fn with_degree(n: usize) -> Self {
        TrigPoly { cos: vec![Rational::zero(); n + 1], sin: vec![Rational::zero(); n + 1] }
    }

    fn canonical(mut self) -> Self {
        while self.cos.len() > 1 {
            let last = self.cos.len() - 1;
            if self.cos[last].is_zero() && self.sin[last].is_zero() {
                self.cos.pop();
                self.sin.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 0 && self.cos[0].is_zero()
    }

    /// `a_k`, zero beyond the degree.
    pub fn cos_coeff(&self, k: usize) -> Rational {
        self.cos.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `b_k`, zero for `k = 0` and beyond the degree.
    pub fn sin_coeff(&self, k: usize) -> Rational {
        self.sin.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `a₀..a_N`.
    pub fn cos_coeffs(&self) -> &[Rational] {
        &self.cos
    }

    /// `b₁..b_N`.
    pub fn sin_coeffs(&self) -> &[Rational] {
        &self.sin[1..]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TrigPoly { cos: self.cos.iter().map(|x| x * c).collect(), sin: self.sin.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact term-wise derivative: `(a cos kθ)' = −k a sin kθ`, `(b sin kθ)' = k b cos kθ`.
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        let mut d = Self::with_degree(n);
        for k in 1..=n {
            let kk = rational::from_i64(k as i64);
            d.cos[k] = &self.sin[k] * &kk;
            d.sin[k] = -(&self.cos[k] * &kk);
        }
        d.canonical()
    }

    /// Mean over one period, `a₀`; the full-period integral is `2π·a₀`.
    pub fn mean_value(&self) -> Rational {
        self.cos[0].clone()
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = rational::to_f64(&self.cos[0]);
        for k in 1..=self.degree() {
            let (s, c) = (k as f64 * theta).sin_cos();
            let a = &self.cos[k];
            let b = &self.sin[k];
            if !a.is_zero() {
                acc += rational::to_f64(a) * c;
            }
            if !b.is_zero() {
                acc += rational::to_f64(b) * s;
            }
        }
        acc
    }

    pub fn parity(&self) -> Parity {
        let has_cos = self.cos.iter().any(|c| !c.is_zero());
        let has_sin = self.sin.iter().any(|c| !c.is_zero());
        match (has_cos, has_sin) {
            (false, false) => Parity::Zero,
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Neither,
        }
    }

    /// ℓ¹ coefficient bound `|a₀| + Σ(|a_k| + |b_k|)`, an upper bound for `sup |p|`
    /// that may overshoot (e.g. `sin θ + cos θ` gives 2 against a true sup of √2).
    pub fn linf_bound(&self) -> f64 {
        self.cos.iter().chain(self.sin.iter()).map(rational::abs_f64).sum()
    }

    /// Returns `a` with `self = a·g³` exactly, if such a rational exists.
    ///
    /// If `g³ ≡ 0` the answer is `Some(0)` when `self ≡ 0` and `None` otherwise.
    pub fn proportional_to_cube(&self, g: &TrigPoly) -> Option<Rational> {
        let cube = g.pow(3);
        if cube.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        if self.degree() != cube.degree() && !self.is_zero() {
            return None;
        }
        let k = (0..=cube.degree()).find(|&k| !cube.cos[k].is_zero() || !cube.sin[k].is_zero())?;
        let pivot =
            if cube.cos[k].is_zero() { self.sin_coeff(k) / &cube.sin[k] } else { self.cos_coeff(k) / &cube.cos[k] };
        (cube.scale(&pivot) == *self).then_some(pivot)
    }
}

impl Default for TrigPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigPoly({self})")
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.cos[0].is_zero() {
            terms.push(self.cos[0].to_string());
        }
        for k in 1..=self.degree() {
            if !self.cos[k].is_zero() {
                terms.push(format!("({})cos{}θ", self.cos[k], k));
            }
            if !self.sin[k].is_zero() {
                terms.push(format!("({})sin{}θ", self.sin[k], k));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.degree().max(rhs.degree());
        let mut out = TrigPoly::with_degree(n);
        for k in 0..=n {
            out.cos[k] = self.cos_coeff(k) + rhs.cos_coeff(k);
            out.sin[k] = self.sin_coeff(k) + rhs.sin_coeff(k);
        }
        out.canonical()
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;

    fn neg(self) -> TrigPoly {
        TrigPoly { cos: self.cos.iter().map(|c| -c).collect(), sin: self.sin.iter().map(|c| -c).collect() }
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.degree() + rhs.degree();
        let mut out = TrigPoly::with_degree(n);
        let h = half();
        for j in 0..=self.degree() {
            let (aj, bj) = (&self.cos[j], &self.sin[j]);
            if aj.is_zero() && bj.is_zero() {
                continue;
            }
            for k in 0..=rhs.degree() {
                let (ak, bk) = (&rhs.cos[k], &rhs.sin[k]);
                if ak.is_zero() && bk.is_zero() {
                    continue;
                }
                let sum = j + k;
                let diff = j.abs_diff(k);
                // sin(j−k) = ±sin|j−k|
                let sign = if j >= k { h.clone() } else { -h.clone() };
                // cos j·cos k = ½cos(j−k) + ½cos(j+k)
                if !aj.is_zero() && !ak.is_zero() {
                    let c = aj * ak * &h;
                    out.cos[diff] += &c;
                    out.cos[sum] += c;
                }
                // sin j·sin k = ½cos(j−k) − ½cos(j+k)
                if !bj.is_zero() && !bk.is_zero() {
                    let c = bj * bk * &h;
                    out.cos[diff] += &c;
                    out.cos[sum] -= c;
                }
                // sin j·cos k = ½sin(j+k) + ½sin(j−k)
                if !bj.is_zero() && !ak.is_zero() {
                    let c = bj * ak;
                    out.sin[sum] += &c * &h;
                    out.sin[diff] += &c * &sign;
                }
                // cos j·sin k = ½sin(j+k) − ½sin(j−k)
                if !aj.is_zero() && !bk.is_zero() {
                    let c = aj * bk;
                    out.sin[sum] += &c * &h;
                    out.sin[diff] -= &c * &sign;
                }
            }
        }
        out.sin[0] = Rational::zero();
        out.canonical()
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: &TrigPoly) -> TrigPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<TrigPoly> for &TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TrigPolyJson {
    #[serde(with = "crate::rational::serde_str::vec")]
    a: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str::vec", default)]
    b: Vec<Rational>,
}

impl Serialize for TrigPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TrigPolyJson { a: self.cos.clone(), b: self.sin[1..].to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TrigPolyJson::deserialize(d)?;
        Ok(TrigPoly::from_coeffs(raw.a, raw.b))
    }
}
