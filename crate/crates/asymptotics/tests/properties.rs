use num_complex::Complex64;
use proptest::prelude::*;
use toeplab_asymptotics::*;

fn domains() -> Vec<ConicDomain> {
    vec![
        ConicDomain::standard(2, &[0]).unwrap(),
        ConicDomain::standard_dp(2, 1).unwrap(),
        ConicDomain::halfspace_product(3, 1).unwrap(),
        ConicDomain::standard_dp(2, 1).unwrap().negated(),
    ]
}

proptest! {
    #[test]
    fn membership_is_invariant_under_positive_scaling(
        which in 0usize..4,
        raw in prop::collection::vec(-2.0f64..2.0, 5),
        lambda in 0.01f64..100.0,
    ) {
        let d = &domains()[which];
        let t = &raw[..d.t_dim];
        let s = &raw[d.t_dim..d.t_dim + d.s_dim];
        let scaled_t: Vec<f64> = t.iter().map(|x| x * lambda).collect();
        let scaled_s: Vec<f64> = s.iter().map(|x| x * lambda).collect();
        prop_assert_eq!(d.contains(t, s), d.contains(&scaled_t, &scaled_s));
    }

    #[test]
    fn members_have_bounded_sections(
        which in 0usize..4,
        raw in prop::collection::vec(-2.0f64..2.0, 5),
    ) {
        let d = &domains()[which];
        let c = d.section_constant(256, 3).unwrap().expect("bounded");
        let t = &raw[..d.t_dim];
        let s = &raw[d.t_dim..d.t_dim + d.s_dim];
        if d.contains(t, s) {
            let nt = t.iter().map(|x| x * x).sum::<f64>().sqrt();
            let ns = s.iter().map(|x| x * x).sum::<f64>().sqrt();
            // every section here is bounded by |s| ≤ |t|
            prop_assert!(c <= 1.0 + 1e-12);
            prop_assert!(ns <= nt + 1e-12);
        }
    }

    #[test]
    fn section_moments_are_homogeneous(
        which in 0usize..4,
        raw in prop::collection::vec(-2.0f64..2.0, 4),
        beta in 0u32..4,
        lambda in 0.1f64..10.0,
    ) {
        let d = &domains()[which];
        let t = &raw[..d.t_dim];
        let b = vec![beta; d.s_dim];
        let v = d.section_moment(t, &b).unwrap();
        let scaled: Vec<f64> = t.iter().map(|x| x * lambda).collect();
        let w = d.section_moment(&scaled, &b).unwrap();
        let expected = v * lambda.powi((d.s_dim as u32 + beta * d.s_dim as u32) as i32);
        prop_assert!((w - expected).abs() <= 1e-10 * expected.abs().max(1e-300));
    }

    #[test]
    fn one_dimensional_moments_scale_exactly(
        a in 0u32..5,
        b in 0u32..4,
        lambda in 0.25f64..8.0,
        diag in 0.3f64..3.0,
    ) {
        let q = QuadraticForm::diagonal(&[diag]).unwrap();
        let d = ConicDomain::standard(1, &[0]).unwrap();
        let opts = MomentOptions::default();
        let base = conic_moment(&[a], &[b], &q, &d, &opts).unwrap().value;
        let scaled = conic_moment(&[a], &[b], &q.scaled(lambda).unwrap(), &d, &opts).unwrap().value;
        let power = (a + b + 2) as f64 / 2.0;
        prop_assert!((scaled - base * lambda.powf(-power)).norm() < 1e-11 * base.norm());
    }

    #[test]
    fn reflection_multiplies_coefficients_by_parity(
        coeffs in prop::collection::vec(-0.4f64..0.4, 4),
        quartic in -0.2f64..0.2,
    ) {
        let mut r = TaylorMap::polynomial(2);
        for (e, c) in [[3, 0], [2, 1], [1, 2], [0, 3]].iter().zip(&coeffs) {
            r.add_term(e, Complex64::new(*c, 0.0));
        }
        r.add_term(&[4, 0], Complex64::new(quartic, 0.0));
        let phase = PhaseData::new(QuadraticForm::diagonal(&[1.0]).unwrap(), 1, r).unwrap();
        let a = TaylorMap::constant(2, 1.0);
        let d = ConicDomain::standard(1, &[0]).unwrap();
        let opts = MomentOptions::default();
        let plus = series_coefficients(&phase, &a, &d, 3, &opts).unwrap();
        let minus = series_coefficients(&phase, &a, &d.negated(), 3, &opts).unwrap();
        for (l, (p, m)) in plus.coefficients.iter().zip(&minus.coefficients).enumerate() {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((p - m * sign).norm() <= 1e-10 * p.norm().max(1.0));
        }
    }

    #[test]
    fn fit_recovers_random_synthetic_series(
        b in prop::collection::vec(-3.0f64..3.0, 3),
        lead in prop::sample::select(vec![0.5, 1.0, 1.5, 2.0]),
    ) {
        let ks: Vec<f64> = (0..7).map(|j| 64.0 * 2f64.powi(j)).collect();
        let values: Vec<Complex64> = ks
            .iter()
            .map(|&k| {
                let s: f64 = b.iter().enumerate().map(|(l, x)| x * k.powf(-0.5 * l as f64)).sum();
                Complex64::new(s * k.powf(-lead), -s * k.powf(-lead))
            })
            .collect();
        let fit = fit_expansion(&values, &ks, lead, 3).unwrap();
        for (got, want) in fit.coefficients.iter().zip(&b) {
            prop_assert!((got.re - want).abs() < 1e-9);
            prop_assert!((got.im + want).abs() < 1e-9);
        }
    }
}
