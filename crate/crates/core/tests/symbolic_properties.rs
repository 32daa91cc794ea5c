use center_focus::certifier::{check_llibre_condition, classify_planar, Verdict};
use center_focus::rational::{ratio, to_f64, Rational};
use center_focus::reduction::{
    abel_coefficients, cherkas_forward, cherkas_inverse, compute_ab, HomogPoly, PlanarSystem,
};
use center_focus::{Parity, TrigPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn trig(max_deg: usize) -> impl Strategy<Value = TrigPoly> {
    (0..=max_deg).prop_flat_map(|deg| {
        (prop::collection::vec(small_rational(), deg + 1), prop::collection::vec(small_rational(), deg))
            .prop_map(|(a, b)| TrigPoly::from_coeffs(a, b))
    })
}

fn odd_trig(max_deg: usize) -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec(small_rational(), 0..=max_deg).prop_map(|b| TrigPoly::from_coeffs(vec![], b))
}

fn even_trig(max_deg: usize) -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(|a| TrigPoly::from_coeffs(a, vec![]))
}

fn homog(n: usize) -> impl Strategy<Value = HomogPoly> {
    prop::collection::vec(small_rational(), n + 1).prop_map(HomogPoly::new)
}

fn planar() -> impl Strategy<Value = PlanarSystem> {
    (2usize..=5).prop_flat_map(|n| (homog(n), homog(n))).prop_map(|(p, q)| PlanarSystem::new(p, q).unwrap())
}

/// Direct evaluation from the definition, independent of the library's evaluator.
fn naive_eval(p: &TrigPoly, theta: f64) -> f64 {
    let cos: f64 = p.cos_coeffs().iter().enumerate().map(|(k, c)| to_f64(c) * (k as f64 * theta).cos()).sum();
    let sin: f64 = p.sin_coeffs().iter().enumerate().map(|(k, c)| to_f64(c) * ((k + 1) as f64 * theta).sin()).sum();
    cos + sin
}

const ANGLES: [f64; 5] = [-2.9, -0.7, 0.0, 1.1, 2.5];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in trig(3), q in trig(3), r in trig(2)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
        prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * TrigPoly::constant(ratio(1, 1)), p.clone());
    }

    #[test]
    fn product_matches_pointwise(p in trig(3), q in trig(3)) {
        let pq = &p * &q;
        for th in ANGLES {
            let want = naive_eval(&p, th) * naive_eval(&q, th);
            prop_assert!((naive_eval(&pq, th) - want).abs() < 1e-9 * (1.0 + want.abs()));
            prop_assert!((pq.eval(th) - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
        prop_assert!(pq.degree() <= p.degree() + q.degree());
    }

    #[test]
    fn derivative_matches_finite_differences(p in trig(4)) {
        let d = p.derivative();
        let h = 1e-5;
        for th in ANGLES {
            let fd = (naive_eval(&p, th + h) - naive_eval(&p, th - h)) / (2.0 * h);
            prop_assert!((d.eval(th) - fd).abs() < 1e-6 * (1.0 + p.linf_bound()));
        }
        prop_assert!(d.mean_value().is_zero());
    }

    #[test]
    fn parity_is_sound(p in trig(4)) {
        for th in ANGLES {
            let (a, b) = (p.eval(th), p.eval(-th));
            match p.parity() {
                Parity::Odd => prop_assert!((a + b).abs() < 1e-9 * (1.0 + p.linf_bound())),
                Parity::Even => prop_assert!((a - b).abs() < 1e-9 * (1.0 + p.linf_bound())),
                Parity::Zero => prop_assert!(a == 0.0 && b == 0.0),
                Parity::Neither => {}
            }
        }
    }

    #[test]
    fn parity_algebra(o1 in odd_trig(3), o2 in odd_trig(3), e in even_trig(3)) {
        prop_assert!((&o1 * &o2).parity().is_even());
        prop_assert!((&o1 * &e).parity().is_odd());
        prop_assert!(o1.derivative().parity().is_even());
        prop_assert!(e.derivative().parity().is_odd());
    }

    #[test]
    fn cube_multiple_is_recovered(g in trig(2), c in small_rational()) {
        prop_assume!(!g.is_zero());
        let h = g.pow(3).scale(&c);
        prop_assert_eq!(h.proportional_to_cube(&g), Some(c));
    }

    #[test]
    fn perturbed_cube_is_rejected(g in trig(2), c in small_rational(), k in 1usize..8, e in small_rational()) {
        prop_assume!(!g.is_zero() && !e.is_zero());
        // a harmonic above deg(g³) can never be matched
        let h = g.pow(3).scale(&c) + TrigPoly::sin_term(3 * g.degree() + k, e);
        prop_assert_eq!(h.proportional_to_cube(&g), None);
    }

    #[test]
    fn reduction_is_pointwise_exact(sys in planar()) {
        let (a, b) = compute_ab(&sys);
        for th in ANGLES {
            let (c, s) = (th.cos(), th.sin());
            let (p, q) = (sys.p().eval(c, s), sys.q().eval(c, s));
            let scale = 1.0 + p.abs() + q.abs();
            prop_assert!((a.eval(th) - (c * p + s * q)).abs() < 1e-9 * scale);
            prop_assert!((b.eval(th) - (c * q - s * p)).abs() < 1e-9 * scale);
        }
        let n = sys.n();
        prop_assert!(a.degree() <= n + 1 && b.degree() <= n + 1);
        let (f, g) = abel_coefficients(n, &a, &b);
        prop_assert!(f.degree() <= 2 * n + 2 && g.degree() <= n + 1);
    }

    #[test]
    fn parity_centers_propagate_to_odd_abel_pair(
        n in 2usize..=6, pa in small_rational(), qa in small_rational(), pick in 0usize..10, qpick in 0usize..10,
    ) {
        let odd: Vec<usize> = (1..=n).step_by(2).collect();
        let even: Vec<usize> = (0..=n).step_by(2).collect();
        let sys = PlanarSystem::new(
            HomogPoly::monomial(n, odd[pick % odd.len()], pa),
            HomogPoly::monomial(n, even[qpick % even.len()], qa),
        ).unwrap();
        let (a, b) = compute_ab(&sys);
        prop_assert!(a.parity().is_odd());
        prop_assert!(b.parity().is_even());
        let (f, g) = abel_coefficients(n, &a, &b);
        prop_assert!(f.parity().is_odd() && g.parity().is_odd());
        prop_assert!(a.mean_value().is_zero());
        prop_assert_eq!(classify_planar(&sys).verdict, Verdict::CertifiedCenter);
    }

    #[test]
    fn certified_focus_has_nonzero_mean(sys in planar()) {
        let cert = classify_planar(&sys);
        let (a, _) = compute_ab(&sys);
        if cert.verdict == Verdict::CertifiedFocus {
            prop_assert!(!a.mean_value().is_zero());
        }
        if cert.verdict == Verdict::Inconclusive {
            prop_assert!(a.mean_value().is_zero());
        }
    }

    #[test]
    fn llibre_constant_scales(f in trig(2), g in trig(2), lam in small_rational(), mu in small_rational()) {
        prop_assume!(!g.is_zero() && !mu.is_zero());
        let base = check_llibre_condition(&f, &g);
        let scaled = check_llibre_condition(&f.scale(&lam), &g.scale(&mu));
        match base {
            Some(a) => prop_assert_eq!(scaled, Some(a * &lam / (&mu * &mu))),
            None => prop_assert!(lam.is_zero() || scaled.is_none()),
        }
    }

    #[test]
    fn cherkas_round_trip(b in trig(3), n in 2usize..=7, r in 0.0f64..0.5, th in -3.0f64..3.0) {
        let rp = r.powi(n as i32 - 1);
        prop_assume!(1.0 + b.eval(th) * rp > 0.1);
        let gamma = cherkas_forward(r, th, &b, n).unwrap();
        let back = cherkas_inverse(gamma, th, &b, n).unwrap();
        prop_assert!((back - r).abs() < 1e-10 * (1.0 + r));
    }

    #[test]
    fn json_round_trip(p in trig(3), sys in planar()) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<TrigPoly>(&s).unwrap(), p);
        let s = serde_json::to_string(&sys).unwrap();
        prop_assert_eq!(serde_json::from_str::<PlanarSystem>(&s).unwrap(), sys);
    }
}
