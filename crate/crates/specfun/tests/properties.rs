use proptest::prelude::*;
use toeplab_specfun::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn er_symmetry(x in -30.0f64..30.0) {
        prop_assert!((er(x) + er(-x) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn er_monotone(x in -8.0f64..8.0, dx in 1e-6f64..1.0) {
        prop_assert!(er(x + dx) >= er(x));
    }

    #[test]
    fn er_inv_round_trip(p in 1e-15f64..(1.0 - 1e-15)) {
        let x = er_inv(p).unwrap();
        prop_assert!((er(x) - p).abs() <= 1e-12 * p.min(1.0 - p).max(1e-300) + 1e-16);
    }

    #[test]
    fn er_inv_odd(p in 1e-12f64..0.5) {
        let a = er_inv(p).unwrap();
        let b = er_inv(1.0 - p).unwrap();
        prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn delta_symmetric(t in 1e-12f64..(1.0 - 1e-12)) {
        let a = density_delta(t).unwrap();
        let b = density_delta(1.0 - t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn inc_gamma_monotone_in_x(a in 0.1f64..200.0, x in 0.0f64..300.0, dx in 1e-3f64..5.0) {
        let p0 = reg_inc_gamma(a, x).unwrap();
        let p1 = reg_inc_gamma(a, x + dx).unwrap();
        prop_assert!(p1 >= p0 - 1e-15);
        prop_assert!((0.0..=1.0).contains(&p0));
    }

    #[test]
    fn inc_beta_reflection(x in 0.0f64..1.0, a in 0.2f64..60.0, b in 0.2f64..60.0) {
        let s = reg_inc_beta(x, a, b).unwrap() + reg_inc_beta(1.0 - x, b, a).unwrap();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // f ≤ g pointwise ⇒ I(f) ≤ I(g), on polynomials vanishing at the endpoints
    #[test]
    fn integral_is_positive_and_monotone(
        c in proptest::collection::vec(-2.0f64..2.0, 4),
        bump in 0.01f64..1.0,
    ) {
        let q = QuadratureSpec { abs_tol: 1e-10, ..QuadratureSpec::default() };
        let cf = c.clone();
        let f = Fn01::with_complement(move |t, tc| {
            t * tc * (cf[0] + t * (cf[1] + t * (cf[2] + t * cf[3])))
        }).holder(1.0);
        let cg = c;
        let g = Fn01::with_complement(move |t, tc| {
            t * tc * (cg[0] + bump + t * (cg[1] + t * (cg[2] + t * cg[3])))
        }).holder(1.0);
        let i_f = integral_i(&f, &q).unwrap();
        let i_g = integral_i(&g, &q).unwrap();
        prop_assert!(i_f < i_g);
        let sq = Fn01::with_complement(move |t, tc| (t * tc * (bump - t)).powi(2)).holder(2.0);
        prop_assert!(integral_i(&sq, &q).unwrap() >= 0.0);
    }

    #[test]
    fn integral_bounded_by_holder_norm(p in 0.3f64..2.0, w in 0.5f64..8.0) {
        let q = QuadratureSpec { abs_tol: 1e-10, ..QuadratureSpec::default() };
        let f = Fn01::with_complement(move |t, tc| (t * tc).powf(p) * (w * t).cos()).holder(p);
        let c = 2f64.powf(p) * integral_i(&Fn01::hp(p), &q).unwrap();
        prop_assert!(integral_i(&f, &q).unwrap().abs() <= c * f.holder_norm(p) + 1e-9);
    }
}
