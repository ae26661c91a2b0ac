use lambda_osc_core::classical::{ode_residual, OrbitParams};
use lambda_osc_core::factorization::{build_state, factorization_check, proposition2_check, shape_invariance_check};
use lambda_osc_core::hermite::{
    derivative_relation_check, generating_coeffs, ode_residual as poly_residual, proportionality, rodrigues,
    series_solution, three_term_next,
};
use lambda_osc_core::params::max_bound_exact;
use lambda_osc_core::quadrature::{integrate_measure, QuadratureSpec};
use lambda_osc_core::spectrum::{ladder_energies_exact, level_energy, level_energy_exact, spacing};
use lambda_osc_core::wavefunction::WaveFunction;
use lambda_osc_core::{classify, rat, LadderFunction, Poly, Rational, Ring};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=30)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

/// Λ·j ≠ 2 for j < 2n, which rules out every degree drop and every second
/// polynomial solution of the same parity.
fn generic_for(lambda: &Rational, n: usize) -> bool {
    (1..2 * n.max(1)).all(|j| lambda.clone() * Rational::from_i64(j as i64) != rat(2, 1))
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generating_parity(l in rational(), n in 0usize..10) {
        let fam = generating_coeffs(n, &l);
        for (k, h) in fam.iter().enumerate() {
            prop_assert!(h.poly().has_parity(k % 2 == 1));
        }
    }

    #[test]
    fn routes_agree(l in rational(), n in 0usize..8) {
        prop_assume!(generic_for(&l, n));
        let g = generating_coeffs(n, &l).pop().unwrap();
        let r = rodrigues(n, &l).unwrap();
        let s = series_solution(n, &l);
        prop_assert!(proportionality(g.poly(), r.poly()).is_some());
        prop_assert!(proportionality(g.poly(), s.poly()).is_some());
    }

    #[test]
    fn ode_holds_exactly(l in rational(), n in 0usize..9) {
        let g = generating_coeffs(n, &l).pop().unwrap();
        prop_assert!(poly_residual(g.poly(), n, &l).is_zero());
    }

    #[test]
    fn recursions(l in rational()) {
        let fam = generating_coeffs(9, &l);
        for n in 1..9 {
            let next = three_term_next(&fam[n], &fam[n - 1], n, &l).unwrap();
            prop_assert_eq!(next.poly(), fam[n + 1].poly());
        }
        for n in 0..7 {
            prop_assert!(derivative_relation_check(&fam, n, &l).unwrap());
        }
    }

    #[test]
    fn ladder_state_matches_family(l in rational(), n in 0u64..6) {
        prop_assume!(max_bound_exact(&l).is_none_or(|m| n <= m));
        prop_assume!(generic_for(&l, n as usize));
        let s = build_state(n, &l).unwrap();
        let g = generating_coeffs(n as usize, &l).pop().unwrap();
        prop_assert!(proportionality(g.poly(), s.poly()).is_some());
        prop_assert_eq!(s.exponent().clone(), -(Rational::one() / (rat(2, 1) * l.clone())));
    }

    #[test]
    fn operator_identities(l in rational(), b in rational(), s in rational(), q in small_poly()) {
        let f = LadderFunction::new(l.clone(), s.clone(), Poly::from_ints(&q));
        prop_assert!(factorization_check(&b, &f).unwrap());
        prop_assert!(shape_invariance_check(&b, &f).unwrap());
        prop_assert!(proposition2_check(&s, &f).unwrap());
    }

    #[test]
    fn ladder_energy_sum(l in rational(), n in 0u64..12) {
        let e = ladder_energies_exact(&l, n);
        prop_assert_eq!(e[n as usize].clone(), level_energy_exact(&l, n) - rat(1, 2));
    }

    #[test]
    fn spacing_closed_form(l in -2.0f64..2.0, m in 0u64..40) {
        let d = level_energy(l, (m + 1) as f64) - level_energy(l, m as f64);
        prop_assert!((d - spacing(l, m)).abs() < 1e-12 * (1.0 + m as f64 * m as f64));
    }

    #[test]
    fn schrodinger_residual(l in -0.95f64..0.95, m in 0u64..7, t in -0.98f64..0.98) {
        let w = WaveFunction::new(m, l).unwrap();
        prop_assume!(w.is_bound());
        let y = match classify(l).unwrap().half_width() {
            Some(a) => t * a,
            None => 4.0 * t,
        };
        prop_assert!(w.schrodinger_residual(y) <= 1e-9);
    }

    #[test]
    fn nodes_and_parity(l in -0.9f64..0.3, m in 0u64..7) {
        let w = WaveFunction::new(m, l).unwrap();
        prop_assume!(w.is_bound());
        let n = w.nodes();
        prop_assert_eq!(n.len() as u64, m);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for &y in &[0.1, 0.37, 0.8] {
            let (a, b) = (w.evaluate(y).unwrap(), w.evaluate(-y).unwrap());
            prop_assert!((a - sign * b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }

    #[test]
    fn classical_solution(l in -0.9f64..2.0, a in 0.05f64..1.0, alpha in 0.2f64..3.0, phase in 0.0f64..6.3) {
        prop_assume!(1.0 + l * a * a > 0.05);
        let o = OrbitParams::new(a, alpha, l, phase).unwrap();
        for i in 0..20 {
            let t = 0.37 * i as f64;
            let r = ode_residual(o.position(t), o.velocity(t), o.acceleration(t), alpha, l);
            prop_assert!(r.abs() <= 1e-10);
        }
    }

    #[test]
    fn odd_integrands_vanish(l in -1.5f64..1.5, k in 0i32..3) {
        let spec = QuadratureSpec::for_degree(l, 2 * k as u64 + 1, 1e-10);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let v = integrate_measure(|y| {
            let z = 1.0 + l * y * y;
            let log_env = if l.abs() < 1e-8 { -y * y } else if z <= 0.0 { f64::NEG_INFINITY } else { -z.ln() / l };
            y.signum() * ((2 * k + 1) as f64 * y.abs().ln() + log_env).exp()
        }, &spec).unwrap();
        prop_assert_eq!(v, 0.0);
    }

    #[test]
    fn float_cutoff_matches_exact(k in 1i64..200) {
        let l = rat(1, k);
        let f = classify(1.0 / k as f64).unwrap();
        prop_assert_eq!(f.max_bound(), max_bound_exact(&l));
    }
}

#[test]
fn zero_lambda_is_classical_hermite() {
    // Hₙ₊₁ = 2yHₙ − 2nHₙ₋₁ on plain integer coefficient vectors
    let fam = generating_coeffs(12, &Rational::zero());
    let mut h: Vec<Vec<i64>> = vec![vec![1], vec![0, 2]];
    for n in 1..12 {
        let mut next = vec![0i64; n + 2];
        for (k, c) in h[n].iter().enumerate() {
            next[k + 1] += 2 * c;
        }
        for (k, c) in h[n - 1].iter().enumerate() {
            next[k] -= 2 * n as i64 * c;
        }
        h.push(next);
    }
    for (n, p) in fam.iter().enumerate() {
        assert_eq!(p.poly(), &Poly::from_ints(&h[n]), "n={n}");
    }
}
