use num_bigint::BigInt;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};
use toeplab_models::*;
use toeplab_spectral::*;
use toeplab_specfun::quad::gauss_kronrod;
use toeplab_specfun::{er, er_inv, integral_i, Fn01, QuadratureSpec};

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn from_values(values: Vec<f64>) -> Spectrum {
    Spectrum::from_values(
        values,
        SpectrumInfo {
            model: "test".into(),
            k: 1,
            complex_dim: 1,
            domain: DomainSpec::empty(),
            exact: true,
            tail: Vec::new(),
        },
    )
    .unwrap()
}

fn cylinder(k: u32) -> Spectrum {
    cylinder_spectrum(k, cylinder_cutoff(k)).unwrap()
}

fn disk(k: u32) -> Spectrum {
    bargmann_disk_spectrum(k, 1.0, bargmann_cutoff(k, 1.0)).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Bernoulli cumulants from raw moments (all equal to t) by the standard
/// moment-cumulant recursion.
fn bernoulli_cumulants(t: f64, n: usize) -> Vec<f64> {
    let binom = |n: usize, r: usize| -> f64 { (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    let mut kappa = vec![0.0; n + 1];
    for m in 1..=n {
        let mut v = t;
        for j in 1..m {
            v -= binom(m - 1, j - 1) * kappa[j] * t;
        }
        kappa[m] = v;
    }
    kappa
}

#[test]
fn cumulant_polynomials_low_degree() {
    assert_eq!(cumulant_polynomial(1).integer_coefficients().unwrap(), ints(&[0, 1]));
    assert_eq!(cumulant_polynomial(2).integer_coefficients().unwrap(), ints(&[0, 1, -1]));
    assert_eq!(cumulant_polynomial(3).integer_coefficients().unwrap(), ints(&[0, 1, -3, 2]));
    assert_eq!(
        cumulant_polynomial(4).integer_coefficients().unwrap(),
        ints(&[0, 1, -7, 12, -6])
    );
    let p3 = cumulant_polynomial(3);
    for t in [0.1, 0.25, 0.4] {
        assert!((p3.eval(t) + p3.eval(1.0 - t)).abs() < 1e-15);
    }
}

#[test]
fn cumulant_polynomials_match_moment_recursion() {
    for t in [0.03, 0.2, 0.5, 0.77, 0.99] {
        let kappa = bernoulli_cumulants(t, 10);
        for l in 1..=10 {
            let got = cumulant_polynomial(l).eval(t);
            assert!((got - kappa[l]).abs() < 1e-11, "ℓ={l} t={t}: {got} vs {}", kappa[l]);
        }
    }
}

#[test]
fn cumulant_polynomials_structure() {
    for l in 2..=20 {
        let p = cumulant_polynomial(l);
        let c = p.integer_coefficients().expect("integer coefficients");
        assert_eq!(c.len(), l + 1, "degree of P_{l}");
        assert_eq!(c[0], BigInt::from(0));
        // P_ℓ(1) = 0: coefficients sum to zero
        assert_eq!(c.iter().sum::<BigInt>(), BigInt::from(0));
        assert_eq!(p.eval_pair(1.0, 0.0), 0.0);
    }
    // memoized: same allocation on repeat
    assert!(std::sync::Arc::ptr_eq(&cumulant_polynomial(7), &cumulant_polynomial(7)));
    // degrees beyond the cache still work
    let big = cumulant_polynomial(MAX_CACHED_DEGREE + 2);
    assert_eq!(big.degree, MAX_CACHED_DEGREE + 2);
}

#[test]
fn near_endpoint_evaluation_keeps_relative_precision() {
    let eps = 1e-14;
    for l in 2..=8 {
        let p = cumulant_polynomial(l);
        // P_ℓ(ε) ≈ ε and P_ℓ(1-ε) ≈ (-1)^ℓ ε
        assert!((p.eval_pair(eps, 1.0 - eps) / eps - 1.0).abs() < 1e-10);
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        assert!((p.eval_pair(1.0 - eps, eps) / (sign * eps) - 1.0).abs() < 1e-10);
    }
}

#[test]
fn trace_functional_examples() {
    let s = cylinder(400);
    assert_eq!(trace_functional(&s, &Fn01::zero()).unwrap(), 0.0);
    // Σ_ℓ g₁(er(ℓ/√k)) = √k I(P₂) up to O(k^{-∞})
    let sum = trace_functional(&s, &Fn01::gp(1.0)).unwrap();
    let predicted = 20.0 / (2.0 * PI).sqrt();
    assert!((sum - predicted).abs() < 1e-8, "{sum} vs {predicted}");
    let g2 = Fn01::gp(2.0);
    let sum2 = trace_functional(&s, &g2).unwrap();
    let pred2 = 20.0 * integral_i(&g2, &q()).unwrap();
    assert!((sum2 - pred2).abs() < 1e-8);

    let est = trace_functional_bounded(&s, &Fn01::p2()).unwrap();
    assert!(est.tail_bound < 1e-30);
    assert!(matches!(
        trace_functional(&s, &Fn01::new(|_| 1.0)),
        Err(SpectralError::Divergent(_))
    ));
    // finite spectrum: bounded f without decay is fine
    let sphere = sphere_cap_spectrum(20, 1.0).unwrap();
    assert_eq!(trace_functional(&sphere, &Fn01::new(|_| 1.0)).unwrap(), 21.0);
}

#[test]
fn counting_examples() {
    assert_eq!(count_eigenvalues(&from_values(vec![]), 0.2, 0.8).unwrap(), 0);
    let s = cylinder(400);
    for (a, b) in [(0.2, 0.8), (0.1, 0.5), (0.01, 0.3)] {
        let lo = 20.0 * er_inv(a).unwrap();
        let hi = 20.0 * er_inv(b).unwrap();
        let lattice = (lo.ceil() as i64..=hi.floor() as i64).count();
        assert_eq!(count_eigenvalues(&s, a, b).unwrap(), lattice);
    }
    let d = disk(100);
    let vol = d.domain.boundary_volume;
    let actual = count_eigenvalues(&d, 0.2, 0.8).unwrap() as f64;
    let predicted = weyl_count(100, 1, vol, 0.2, 0.8).unwrap();
    assert!((actual - predicted).abs() <= 2.0, "{actual} vs {predicted}");
    assert!(matches!(count_eigenvalues(&d, 0.6, 0.4), Err(SpectralError::Ordering { .. })));
    // closed interval: an eigenvalue equal to an endpoint counts
    let s = from_values(vec![0.25, 0.5, 0.75]);
    assert_eq!(count_eigenvalues(&s, 0.25, 0.75).unwrap(), 3);
}

#[test]
fn weyl_count_examples() {
    let v = weyl_count(400, 1, 2.0 * PI, er(-1.0), er(1.0)).unwrap();
    assert!((v - 40.0).abs() < 1e-9);
    let narrow = weyl_count(400, 1, 2.0 * PI, 0.5 - 1e-9, 0.5).unwrap();
    assert!(narrow < 1e-6);
    for a in [0.05, 0.2, 0.4] {
        let left = weyl_count(100, 1, 1.0, a, 0.5).unwrap();
        let right = weyl_count(100, 1, 1.0, 0.5, 1.0 - a).unwrap();
        assert!((left - right).abs() < 1e-9 * left);
    }
    assert!(weyl_count(100, 1, 1.0, 0.0, 0.5).is_err());
}

#[test]
fn weyl_trace_examples() {
    assert_eq!(weyl_trace(400, 1, 2.0 * PI, &Fn01::zero(), &q()).unwrap(), 0.0);
    let v = weyl_trace(400, 1, 2.0 * PI, &Fn01::p2(), &q()).unwrap();
    assert!((v - 20.0 / (2.0 * PI).sqrt()).abs() < 1e-10);

    let mut ratios = Vec::new();
    for k in [100, 200, 400, 800] {
        let s = disk(k);
        let actual = trace_functional(&s, &Fn01::p2()).unwrap();
        let predicted = weyl_trace(k, 1, s.domain.boundary_volume, &Fn01::p2(), &q()).unwrap();
        ratios.push(actual / predicted);
    }
    let dev: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    assert!(dev.windows(2).all(|w| w[1] <= w[0]), "{ratios:?}");
    assert!(dev[3] < 0.03);
}

#[test]
fn two_term_weyl_examples() {
    let s = sphere_cap_spectrum(200, 1.2).unwrap();
    let (u0, u0c) = cap_parameter(1.2);
    let (mu_a, mu_ac) = (2.0 * PI * u0, 2.0 * PI * u0c);
    // linear g: no boundary term
    let linear = Fn01::new(|t| 0.3 + 2.0 * t).holder(1.0);
    let r = two_term_weyl(&s, &linear, mu_a, mu_ac, &q()).unwrap();
    assert!((r.predicted - r.leading).abs() < 1e-9);
    // g = 1: volume term is the leading-order dimension k+1
    let one = Fn01::new(|_| 1.0).holder(1.0);
    let r = two_term_weyl(&s, &one, mu_a, mu_ac, &q()).unwrap();
    assert!((r.predicted - 200.0).abs() < 1e-9);
    assert!((r.actual - 201.0).abs() < 1e-9);

    // g = x² on the disk: residual scaled by k^{-n+1/2} tends to zero
    let square = Fn01::new(|t| t * t).holder(1.0);
    let mut scaled = Vec::new();
    for k in [100, 200, 400, 800] {
        let s = disk(k);
        let r = two_term_weyl(&s, &square, 2.0 * PI, f64::INFINITY, &q()).unwrap();
        scaled.push(((r.actual - r.predicted) * (k as f64).powf(-0.5)).abs());
    }
    assert!(scaled.windows(2).all(|w| w[1] < w[0]), "{scaled:?}");
    assert!(scaled[3] < 1e-2);
    let shifted = Fn01::new(|t| 1.0 + t).holder(1.0);
    assert!(matches!(
        two_term_weyl(&disk(50), &shifted, 2.0 * PI, f64::INFINITY, &q()),
        Err(SpectralError::Divergent(_))
    ));
}

#[test]
fn entropy_examples() {
    assert_eq!(entanglement_entropy(&from_values(vec![0.0, 1.0, 1.0, 0.0])), 0.0);
    assert!((entanglement_entropy(&from_values(vec![0.5])) - LN_2).abs() < 1e-16);
    let s = cylinder(400);
    let predicted = 20.0 * integral_i(&Fn01::entropy(), &q()).unwrap();
    let ratio = entanglement_entropy(&s) / predicted;
    assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
    let via_trace = trace_functional(&s, &Fn01::entropy()).unwrap();
    assert_eq!(via_trace, entanglement_entropy(&s));
}

#[test]
fn cumulant_examples() {
    let s = disk(200);
    assert!((cumulant(&s, 1).unwrap() - 200.0).abs() < 1e-9);
    assert!((cumulant(&from_values(vec![0.5]), 2).unwrap() - 0.25).abs() < 1e-16);
    let k2 = cumulant(&s, 2).unwrap();
    let i_p2 = 1.0 / (2.0 * PI).sqrt();
    let predicted = (200f64).sqrt() * 1.0 * i_p2 * BARGMANN_METRIC_SCALE;
    assert!((k2 / predicted - 1.0).abs() < 0.03, "{k2} vs {predicted}");
    let k3 = cumulant(&s, 3).unwrap();
    assert!(k3.abs() * (200f64).powf(0.25) <= k2);
    // κ₂ two ways
    let alt = compensated_sum(s.eigenvalues.iter().copied())
        - compensated_sum(s.eigenvalues.iter().map(|l| l * l));
    assert!((k2 - alt).abs() < 1e-12 * k2.abs().max(1.0));
    assert!(cumulant(&s, 0).is_err());
}

#[test]
fn cgf_examples() {
    let s = cylinder(400);
    assert_eq!(cgf(&s, Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
    let single = from_values(vec![0.3]);
    let h = 1e-3;
    let f = |t: f64| cgf(&single, Complex64::new(t, 0.0)).unwrap().re;
    let second = (f(h) + f(-h)) / (h * h);
    assert!((second - 0.21).abs() < 1e-6);
    let slope = (f(h) - f(-h)) / (2.0 * h);
    assert!(slope.abs() < 1e-7);
    let v = cgf(&s, Complex64::new(0.5, 0.0)).unwrap();
    assert!(v.im.abs() < 1e-15);
    let predicted = integral_i(&cgf_function(0.5), &q()).unwrap();
    assert!((v.re / 20.0 / predicted - 1.0).abs() < 0.02);
    assert!(cgf(&s, Complex64::new(0.0, PI)).is_err());
    assert!(cgf(&s, Complex64::new(0.2, 3.0)).unwrap().is_finite());
}

#[test]
fn model_variable_examples() {
    for l in [3, 5, 7] {
        assert_eq!(model_variable_cumulant(0.3, l).unwrap(), 0.0);
    }
    let v = model_variable_cumulant(0.1, 2).unwrap();
    assert!((v - 10.0 / (2.0 * PI).sqrt()).abs() < 1e-10, "{v}");
    let i_p4 = integral_i(&cumulant_function(4), &q()).unwrap();
    let v = model_variable_cumulant(0.05, 4).unwrap();
    assert!((v - 20.0 * i_p4).abs() < 1e-10, "{v} vs {}", 20.0 * i_p4);
    assert!(model_variable_cumulant(0.0, 2).is_err());
}

#[test]
fn euler_maclaurin_examples() {
    let gauss = |x: f64| (-x * x).exp();
    let v = euler_maclaurin_sum(gauss, 20.0, 0.0).unwrap();
    assert!((v - PI.sqrt()).abs() < 1e-12);
    let shifted = euler_maclaurin_sum(gauss, 20.0, 0.5).unwrap();
    assert!((shifted - PI.sqrt()).abs() < 1e-12);

    // g_p ∘ er with τ = √k reproduces the cylinder trace
    let g = |x: f64| {
        let (t, tc) = (er(x), er(-x));
        t * t * tc
    };
    let s = cylinder(400);
    let direct = trace_functional(&s, &Fn01::gp(2.0)).unwrap() / 20.0;
    let lattice = euler_maclaurin_sum(g, 20.0, 0.0).unwrap();
    assert!((direct - lattice).abs() < 1e-14);

    // a slowly decaying bump resolves the super-polynomial rate over the ladder
    let bump = |x: f64| 1.0 / (1.0 + x * x).powi(4);
    let exact = gauss_kronrod(bump, -1e3, 1e3, 1e-15, 1e-15, 5000).unwrap().value;
    let check = euler_maclaurin_check(bump, exact, &[2.0, 3.0, 4.0, 6.0], 0.0).unwrap();
    assert!(check.faster_than_sixth_power, "{:?}", check.residuals);
}

#[test]
fn concentration_bound_is_stable_on_caps() {
    // d_k^{-1} Σ λ^p (1-λ)^p ≤ C k^{-1/2}; the fitted C does not grow
    for p in [0.5, 1.0] {
        let c: Vec<f64> = [50u32, 100, 200, 400]
            .iter()
            .map(|&k| {
                let s = sphere_cap_spectrum(k, 1.0).unwrap();
                power_trace(&s, p, p) / (k as f64 + 1.0) * (k as f64).sqrt()
            })
            .collect();
        let (lo, hi) = c.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(hi / lo < 1.1, "p={p}: {c:?}");
        assert!(c[3] <= 1.02 * c[0], "p={p}: {c:?}");
    }
}

#[test]
fn fourier_count_law_examples() {
    let v = fourier_count_law(512, 2, 0.1, 0.9).unwrap();
    let expected = (512f64).ln() * 2.0 / (2.0 * PI * PI) * 2.0 * (9f64).ln();
    assert!((v - expected).abs() < 1e-12);
    assert!(fourier_count_law(512, 2, 0.9, 0.1).is_err());
}
