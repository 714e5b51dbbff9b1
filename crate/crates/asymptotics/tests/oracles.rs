use num_complex::Complex64;
use std::f64::consts::PI;
use toeplab_asymptotics::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn half_t_squared() -> QuadraticForm {
    QuadraticForm::diagonal(&[1.0]).unwrap()
}

fn cone() -> ConicDomain {
    ConicDomain::standard(1, &[0]).unwrap()
}

fn qmc() -> MomentOptions {
    MomentOptions {
        method: MomentMethod::QuasiMonteCarlo,
        ..MomentOptions::default()
    }
}

/// `t²/2 + c t³` on `(t, s)`.
fn cubic_phase(coef: f64) -> PhaseData {
    let r = TaylorMap::polynomial(2).with_term(&[3, 0], c(coef));
    PhaseData::new(half_t_squared(), 1, r).unwrap()
}

#[test]
fn model_moment_is_one() {
    // ∫_0^∞ t e^{-t²/2} dt = 1
    let quad = conic_moment(&[0], &[0], &half_t_squared(), &cone(), &MomentOptions::default()).unwrap();
    assert_eq!(quad.method, MomentMethod::Quadrature);
    assert!((quad.value - c(1.0)).norm() < 1e-12);
    let mc = conic_moment(&[0], &[0], &half_t_squared(), &cone(), &qmc()).unwrap();
    assert!((mc.value - c(1.0)).norm() < 1e-3, "{:?}", mc);
}

#[test]
fn higher_moments_match_gamma_values() {
    // ∫_0^∞ t^a (t^{b+1}/(b+1)) e^{-t²/2} dt = 2^{(m-1)/2} Γ((m+1)/2)/(b+1), m = a+b+1
    for a in 0..4u32 {
        for b in 0..3u32 {
            let m = (a + b + 1) as f64;
            let exact = 2f64.powf((m - 1.0) / 2.0) * toeplab_specfun::ln_gamma((m + 1.0) / 2.0).exp()
                / (b + 1) as f64;
            let got = conic_moment(&[a], &[b], &half_t_squared(), &cone(), &MomentOptions::default()).unwrap();
            assert!((got.value.re - exact).abs() < 1e-11 * exact, "a={a} b={b}");
        }
    }
}

#[test]
fn complex_quadratic_part() {
    // ∫_0^∞ t e^{-z t²/2} dt = 1/z for Re z > 0
    let z = Complex64::new(1.0, 0.5);
    let q = QuadraticForm::new(nalgebra::DMatrix::from_element(1, 1, z)).unwrap();
    let got = conic_moment(&[0], &[0], &q, &cone(), &MomentOptions::default()).unwrap();
    assert!((got.value - 1.0 / z).norm() < 1e-12);
    // two variables, QMC on both: the t₂² moment contributes √(2π)
    let q2 = QuadraticForm::new(nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[z, c(0.0), c(0.0), c(1.0)],
    ))
    .unwrap();
    let d2 = ConicDomain::standard(2, &[0]).unwrap();
    let got = conic_moment(&[0, 2], &[0], &q2, &d2, &qmc()).unwrap();
    let exact = (2.0 * PI).sqrt() / z;
    assert!((got.value - exact).norm() < 2e-3 * exact.norm(), "{got:?} vs {exact}");
}

#[test]
fn odd_moment_on_symmetric_coordinate_vanishes() {
    let q = QuadraticForm::diagonal(&[1.0, 2.0]).unwrap();
    let d = ConicDomain::standard(2, &[0]).unwrap();
    let got = conic_moment(&[0, 1], &[0], &q, &d, &qmc()).unwrap();
    assert!(got.value.norm() <= 3.0 * got.error + 1e-12, "{got:?}");
}

#[test]
fn moment_scaling_with_lambda_four() {
    let q = QuadraticForm::new(nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[c(1.0), c(0.3), c(0.3), c(1.5)],
    ))
    .unwrap();
    let d = ConicDomain::standard(2, &[0]).unwrap();
    let alpha = [1, 2];
    let beta = [1];
    let base = conic_moment(&alpha, &beta, &q, &d, &qmc()).unwrap();
    let scaled = conic_moment(&alpha, &beta, &q.scaled(4.0).unwrap(), &d, &qmc()).unwrap();
    let power = (3.0 + 1.0 + 2.0 + 1.0) / 2.0;
    let expected = base.value * 4f64.powf(-power);
    assert!((scaled.value - expected).norm() < 1e-3 * expected.norm() + 3.0 * scaled.error);
}

#[test]
fn unbounded_sections_are_rejected() {
    let d = ConicDomain::whole(1, 1);
    assert!(conic_moment(&[0], &[0], &half_t_squared(), &d, &MomentOptions::default()).is_err());
}

#[test]
fn cubic_series_matches_hand_expansion() {
    // ∫_0 t e^{-k(t²/2 + c t³)} dt = k^{-1}(1 - 3c√(π/2) k^{-1/2} + 24c² k^{-1} + …)
    let coef = 0.3;
    let s = series_coefficients(
        &cubic_phase(coef),
        &TaylorMap::constant(2, 1.0),
        &cone(),
        2,
        &MomentOptions::default(),
    )
    .unwrap();
    assert_eq!(s.leading_power, 1.0);
    let expected = [1.0, -3.0 * coef * (PI / 2.0).sqrt(), 24.0 * coef * coef];
    for (b, e) in s.coefficients.iter().zip(expected) {
        assert!((b - c(e)).norm() < 1e-10, "{b} vs {e}");
    }
}

#[test]
fn leading_coefficient_is_amplitude_times_volume() {
    let a = TaylorMap::polynomial(2)
        .with_term(&[0, 0], c(2.5))
        .with_term(&[1, 0], c(1.0))
        .with_term(&[0, 1], c(-0.7));
    let s = series_coefficients(&cubic_phase(0.1), &a, &cone(), 1, &MomentOptions::default()).unwrap();
    let vol = conic_moment(&[0], &[0], &half_t_squared(), &cone(), &MomentOptions::default()).unwrap();
    assert!((s.coefficients[0] - 2.5 * vol.value).norm() < 1e-12);
}

#[test]
fn pure_quadratic_has_only_leading_term() {
    let phase = PhaseData::quadratic(half_t_squared(), 1);
    let s = series_coefficients(&phase, &TaylorMap::constant(2, 1.0), &cone(), 3, &MomentOptions::default())
        .unwrap();
    assert!((s.coefficients[0] - c(1.0)).norm() < 1e-12);
    for b in &s.coefficients[1..] {
        assert_eq!(*b, c(0.0));
    }
}

#[test]
fn composite_terms_have_nonnegative_order() {
    let r = TaylorMap::polynomial(2)
        .with_term(&[3, 0], c(0.4))
        .with_term(&[1, 2], c(-0.2))
        .with_term(&[4, 0], c(0.1));
    let phase = PhaseData::new(half_t_squared(), 1, r).unwrap();
    let a = TaylorMap::polynomial(2).with_term(&[0, 0], c(1.0)).with_term(&[0, 1], c(2.0));
    let terms = composite_coefficients(&phase, &a, 4).unwrap();
    assert!(!terms.is_empty());
    assert!(terms.iter().all(|t| t.order() >= 0 && t.m <= 0));
    // e^{-kr} contributes k^{+1} t³ at order ℓ = 1
    assert!(terms
        .iter()
        .any(|t| t.m == -1 && t.exponents == vec![3, 0] && (t.coefficient + 0.4).norm() < 1e-15));
}

#[test]
fn insufficient_taylor_degree_is_an_error() {
    let r = TaylorMap::truncated(2, 4).with_term(&[3, 0], c(0.2));
    let phase = PhaseData::new(half_t_squared(), 1, r).unwrap();
    let a = TaylorMap::constant(2, 1.0);
    let err = series_coefficients(&phase, &a, &cone(), 2, &MomentOptions::default());
    assert!(matches!(err, Err(AsymptoticsError::InsufficientDegree { what: "phase", .. })));
    assert!(series_coefficients(&phase, &a, &cone(), 1, &MomentOptions::default()).is_ok());
}

#[test]
fn low_order_remainder_is_rejected() {
    let r = TaylorMap::polynomial(2).with_term(&[0, 2], c(1.0));
    assert!(PhaseData::new(half_t_squared(), 1, r).is_err());
}

#[test]
fn negated_domain_flips_odd_coefficients() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut r = TaylorMap::polynomial(2);
    for e in [[3, 0], [2, 1], [1, 2], [0, 3]] {
        r.add_term(&e, c(rng.random_range(-0.5..0.5)));
    }
    let phase = PhaseData::new(half_t_squared(), 1, r).unwrap();
    let a = TaylorMap::constant(2, 1.0);
    let opts = MomentOptions::default();
    let plus = series_coefficients(&phase, &a, &cone(), 3, &opts).unwrap();
    let minus = series_coefficients(&phase, &a, &cone().negated(), 3, &opts).unwrap();
    for (l, (p, m)) in plus.coefficients.iter().zip(&minus.coefficients).enumerate() {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        assert!((p - sign * m).norm() < 1e-11 * p.norm().max(1.0), "ℓ={l}: {p} {m}");
    }
    assert!(plus.coefficients[1].norm() > 1e-3);
}

fn oracle_at(phase: &PhaseData, domain: &ConicDomain, k: f64) -> Complex64 {
    quadrature_oracle(
        |t, s| phase.eval(t, s),
        |_, _| c(1.0),
        domain,
        k,
        &OracleOptions::default(),
    )
    .unwrap()
    .value
}

#[test]
fn oracle_model_integral_is_one_over_k() {
    let phase = PhaseData::quadratic(half_t_squared(), 1);
    for k in [200.0, 800.0, 3200.0] {
        let v = oracle_at(&phase, &cone(), k);
        assert!((v.re * k - 1.0).abs() < 1e-10, "k={k}: {}", v.re * k);
        assert!(v.im.abs() < 1e-15);
    }
}

#[test]
fn oracle_without_cone_follows_classical_law() {
    // D = ℝ², ball cutoff: I_k √k → √(2π) · (length of the s-range at t = 0) = 2√(2π)
    let phase = PhaseData::quadratic(half_t_squared(), 1);
    let whole = ConicDomain::whole(1, 1);
    let limit = 2.0 * (2.0 * PI).sqrt();
    let mut prev = f64::INFINITY;
    for k in [100.0, 400.0, 1600.0] {
        let err = (oracle_at(&phase, &whole, k).re * k.sqrt() - limit).abs();
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 2e-3 * limit);
}

#[test]
fn oracle_agrees_with_series_at_large_k() {
    let phase = cubic_phase(0.3);
    let s = series_coefficients(&phase, &TaylorMap::constant(2, 1.0), &cone(), 3, &MomentOptions::default())
        .unwrap();
    let ks = [400.0, 1600.0, 6400.0];
    let gaps: Vec<f64> = ks
        .iter()
        .map(|&k| (oracle_at(&phase, &cone(), k) - s.partial_sum(k, 3)).norm())
        .collect();
    // remainder O(k^{-(2+4)/2}) = O(k^{-3}): slope over the ladder close to 3
    let slope = -(gaps[2] / gaps[0]).ln() / (ks[2] / ks[0]).ln();
    assert!(slope > 2.8, "slope {slope}, gaps {gaps:?}");
}

#[test]
fn fit_recovers_exact_series() {
    let b = [1.3, -0.4, 2.2, 0.7];
    let ks: Vec<f64> = (0..8).map(|j| 50.0 * 2f64.powi(j)).collect();
    let values: Vec<Complex64> = ks
        .iter()
        .map(|&k| c(k.powf(-1.5) * b.iter().enumerate().map(|(l, x)| x * k.powf(-0.5 * l as f64)).sum::<f64>()))
        .collect();
    let fit = fit_expansion(&values, &ks, 1.5, 4).unwrap();
    for (got, want) in fit.coefficients.iter().zip(b) {
        assert!((got.re - want).abs() < 1e-10, "{got} vs {want}");
    }
    assert!(fit.condition_number.is_finite() && fit.condition_number > 1.0);
    assert!(fit.to_json()["condition_number"].is_number());
}

#[test]
fn fit_preconditions() {
    let ks = [1.0, 2.0, 4.0, 8.0, 16.0];
    let v = vec![c(1.0); 5];
    assert!(matches!(fit_expansion(&v, &ks, 1.0, 5), Err(AsymptoticsError::IllConditioned(_))));
    assert!(fit_expansion(&v, &ks, 1.0, 4).is_err());
    assert!(fit_expansion(&v, &ks, 1.0, 3).is_ok());
}

#[test]
fn fitted_model_coefficients_match_the_series() {
    let coef = 0.3;
    let phase = cubic_phase(coef);
    let ks: Vec<f64> = (0..8).map(|j| 100.0 * 2f64.powi(j)).collect();
    let values: Vec<Complex64> = ks.iter().map(|&k| oracle_at(&phase, &cone(), k)).collect();
    let fit = fit_expansion(&values, &ks, 1.0, 4).unwrap();
    assert!((fit.coefficients[0].re - 1.0).abs() < 1e-4);
    let b1 = -3.0 * coef * (PI / 2.0).sqrt();
    assert!((fit.coefficients[1].re - b1).abs() < 1e-2 * b1.abs());
}

#[test]
fn integer_powers_leave_structured_residual() {
    let phase = cubic_phase(0.3);
    let ks: Vec<f64> = (0..8).map(|j| 100.0 * 2f64.powi(j)).collect();
    let values: Vec<Complex64> = ks.iter().map(|&k| oracle_at(&phase, &cone(), k)).collect();
    let half = fit_powers(&values, &ks, 1.0, &[1.0, 1.5, 2.0, 2.5]).unwrap();
    let integer = fit_powers(&values, &ks, 1.0, &[1.0, 2.0, 3.0, 4.0]).unwrap();
    assert!(
        integer.residual_norm() > 100.0 * half.residual_norm(),
        "{} vs {}",
        integer.residual_norm(),
        half.residual_norm()
    );
}

#[test]
fn model_quadratic_form_structure() {
    let m = ModelQuadraticForm::new(3, 2).unwrap();
    let mat = m.matrix();
    assert_eq!(mat.nrows(), 12);
    assert_eq!(mat, mat.transpose());
    assert!(m.quadratic_form().unwrap().smallest_real_eigenvalue() > 0.0);
    // p = 1: q(t) = |t|²/2
    let one = ModelQuadraticForm::new(1, 1).unwrap().matrix();
    assert_eq!(one, nalgebra::DMatrix::identity(2, 2));
    // off-diagonal block ½[[-1, i], [-i, -1]] between t_1 and t_2 for n = 1
    let two = ModelQuadraticForm::new(2, 1).unwrap().matrix();
    assert_eq!(two[(0, 2)], c(-0.5));
    assert_eq!(two[(0, 3)], Complex64::new(0.0, 0.5));
    assert_eq!(two[(1, 2)], Complex64::new(0.0, -0.5));
}

#[test]
fn c11_both_routes() {
    let exact = (2.0 * PI).powf(-1.5);
    let c11 = universal_constant(1, 1, &MomentOptions::default()).unwrap();
    assert!((c11.route_a - exact).abs() < 1e-10 * exact);
    assert!((c11.route_b - exact).abs() < 5e-3 * exact);
    assert!((c11.route_b - exact).abs() < 5.0 * c11.route_b_error + 1e-9);
}

#[test]
fn routes_agree_for_small_p_and_n() {
    for p in 1..=3 {
        for n in 1..=2 {
            let u = universal_constant(p, n, &MomentOptions::default()).unwrap();
            assert!(u.relative_difference() < 1e-3, "{u:?}");
            assert!(u.route_b_imag.abs() < 5.0 * u.route_b_error + 1e-12);
        }
    }
}

#[test]
fn dimension_lift_is_one_over_two_pi() {
    for p in 1..=3 {
        for n in 1..=2 {
            let lo = universal_constant_route_a(p, n).unwrap();
            let hi = universal_constant_route_a(p, n + 1).unwrap();
            assert!((hi / lo - 1.0 / (2.0 * PI)).abs() < 1e-10);
        }
    }
}

#[test]
fn series_json_shape() {
    let s = series_coefficients(&cubic_phase(0.2), &TaylorMap::constant(2, 1.0), &cone(), 1, &MomentOptions::default())
        .unwrap();
    let j = s.to_json();
    assert_eq!(j["coefficients"].as_array().unwrap().len(), 2);
    assert_eq!(j["errors"].as_array().unwrap().len(), 2);
    assert_eq!(j["leading_power"], 1.0);
}
