//! Seeded families of systems with known answers, shared by tests and tooling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficient::Coefficient;
use crate::rational::{from_i64, ratio, Rational};
use crate::reduction::{abel_from_planar, AbelProblem, HomogPoly, PlanarSystem};
use crate::trigpoly::TrigPoly;

#[derive(Debug, Clone)]
pub struct NamedSystem {
    pub name: String,
    pub system: PlanarSystem,
}

#[derive(Debug, Clone)]
pub struct NamedAbel {
    pub name: String,
    pub problem: AbelProblem,
}

/// `P = a x^{N₁} y^{M₁}`, `Q = b x^{N₂} y^{M₂}` of common degree `n`.
pub fn monomial_system(n: usize, m1: usize, a: Rational, m2: usize, b: Rational) -> PlanarSystem {
    PlanarSystem::new(HomogPoly::monomial(n, m1, a), HomogPoly::monomial(n, m2, b)).expect("degrees agree")
}

fn random_coefficient(rng: &mut impl Rng) -> Rational {
    loop {
        let num = rng.gen_range(-12i64..=12);
        if num != 0 {
            return ratio(num, 4);
        }
    }
}

/// `P = a x^{N₁} y^{M₁}` with `M₁` odd, `Q = b x^{N₂} y^{M₂}` with `M₂` even;
/// `n ∈ [2, 7]` and `a, b ∈ [−3, 3]` quarter-integers.
pub fn random_parity_center(rng: &mut impl Rng) -> PlanarSystem {
    let n = rng.gen_range(2..=7usize);
    let odd: Vec<usize> = (1..=n).step_by(2).collect();
    let even: Vec<usize> = (0..=n).step_by(2).collect();
    let m1 = odd[rng.gen_range(0..odd.len())];
    let m2 = even[rng.gen_range(0..even.len())];
    monomial_system(n, m1, random_coefficient(rng), m2, random_coefficient(rng))
}

pub fn parity_center_corpus(seed: u64, count: usize) -> Vec<NamedSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let system = random_parity_center(&mut rng);
            NamedSystem { name: format!("parity-center-{i}"), system }
        })
        .collect()
}

/// `P = 2x²y`, `Q = xy²`.
pub fn two_x2y_xy2() -> PlanarSystem {
    monomial_system(3, 1, from_i64(2), 2, from_i64(1))
}

/// `P = y·R`, `Q = −x·R` for a homogeneous `R`, which forces `A ≡ 0`.
pub fn rotation_family(r: &HomogPoly) -> PlanarSystem {
    let y = HomogPoly::monomial(1, 1, from_i64(1));
    let minus_x = HomogPoly::monomial(1, 0, from_i64(-1));
    PlanarSystem::new(y.mul(r), minus_x.mul(r)).expect("degrees agree")
}

/// The factors `R ∈ {x, x³, xy², y, x²y, y³}`.
pub fn rotation_factors() -> Vec<(&'static str, HomogPoly)> {
    let one = from_i64(1);
    vec![
        ("x", HomogPoly::monomial(1, 0, one.clone())),
        ("x^3", HomogPoly::monomial(3, 0, one.clone())),
        ("xy^2", HomogPoly::monomial(3, 2, one.clone())),
        ("y", HomogPoly::monomial(1, 1, one.clone())),
        ("x^2y", HomogPoly::monomial(3, 1, one.clone())),
        ("y^3", HomogPoly::monomial(3, 3, one)),
    ]
}

/// `P = x³`, `Q = 0`, a weak focus with mean of `A` equal to 3/8.
pub fn cubic_focus() -> PlanarSystem {
    PlanarSystem::new(HomogPoly::monomial(3, 0, from_i64(1)), HomogPoly::zero(3)).expect("degrees agree")
}

/// Planar systems with a known answer plus `count` random parity centers.
pub fn planar_regression(seed: u64, count: usize) -> Vec<NamedSystem> {
    let mut out = vec![
        NamedSystem { name: "2x2y-xy2".into(), system: two_x2y_xy2() },
        NamedSystem { name: "cubic-focus".into(), system: cubic_focus() },
    ];
    for (label, r) in rotation_factors() {
        out.push(NamedSystem { name: format!("rotation-{label}"), system: rotation_family(&r) });
    }
    out.extend(parity_center_corpus(seed, count));
    out
}

/// `a₀ + a₁ cos 2πt + a₂ sin 2πt` on `[−½, ½]`.
pub fn cos2pit(coeffs: &[Rational]) -> Coefficient {
    let a: Vec<Rational> = coeffs.iter().take(2).cloned().collect();
    let b: Vec<Rational> = coeffs.iter().skip(2).cloned().collect();
    Coefficient::Trig(TrigPoly::from_coeffs(a, b))
}

/// `x' = cos(2πt) x³ + cos(2πt) x²` on `[−½, ½]`.
pub fn cos2pit_pair() -> AbelProblem {
    let c = Coefficient::Trig(TrigPoly::cos_theta());
    AbelProblem::free(c.clone(), c, 0.5)
}

/// Odd `f`, `g`: sine series of degree ≤ 3 (period `2a`) or odd polynomials in `t`.
pub fn random_odd_abel(rng: &mut impl Rng) -> AbelProblem {
    if rng.gen_bool(0.5) {
        let coeff = |rng: &mut ChaCha8Rng| {
            let deg = rng.gen_range(1..=3usize);
            let b: Vec<Rational> = (0..deg).map(|_| random_coefficient(rng)).collect();
            Coefficient::Trig(TrigPoly::from_coeffs(vec![], b))
        };
        let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
        let f = coeff(&mut inner);
        let g = coeff(&mut inner);
        let a = [0.5, 1.0, std::f64::consts::PI][rng.gen_range(0..3)];
        AbelProblem::free(f, g, a)
    } else {
        let poly = |rng: &mut ChaCha8Rng| {
            let mut c = vec![from_i64(0); 4];
            c[1] = random_coefficient(rng);
            c[3] = random_coefficient(rng);
            Coefficient::Poly(c)
        };
        let mut inner = ChaCha8Rng::seed_from_u64(rng.gen());
        let f = poly(&mut inner);
        let g = poly(&mut inner);
        AbelProblem::free(f, g, 1.0)
    }
}

pub fn odd_abel_corpus(seed: u64, count: usize) -> Vec<NamedAbel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| NamedAbel { name: format!("odd-abel-{i}"), problem: random_odd_abel(&mut rng) }).collect()
}

/// Abel problems: the reductions of every planar regression system, the
/// cosine pair, and `count` random odd problems.
pub fn abel_regression(seed: u64, count: usize) -> Vec<NamedAbel> {
    let mut out: Vec<NamedAbel> = planar_regression(seed, count)
        .into_iter()
        .map(|s| NamedAbel { name: s.name, problem: abel_from_planar(&s.system) })
        .collect();
    out.push(NamedAbel { name: "cos2pit".into(), problem: cos2pit_pair() });
    out.extend(odd_abel_corpus(seed.wrapping_add(1), count));
    out
}
