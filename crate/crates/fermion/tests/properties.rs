use proptest::prelude::*;
use toeplab_fermion::*;
use toeplab_models::{DomainSpec, Spectrum, SpectrumInfo};
use toeplab_spectral::cumulant;

fn spectrum(values: Vec<f64>) -> Spectrum {
    Spectrum::from_values(
        values,
        SpectrumInfo {
            model: "random".into(),
            k: 1,
            complex_dim: 1,
            domain: DomainSpec::empty(),
            exact: true,
            tail: Vec::new(),
        },
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pmf_and_spectral_cumulants_agree(params in prop::collection::vec(0.0f64..=1.0, 1..200)) {
        let d = poisson_binomial(&params).unwrap();
        let s = spectrum(params);
        for l in 1..=PMF_CUMULANT_LIMIT {
            let a = pmf_cumulant(&d, l).unwrap();
            let b = cumulant(&s, l).unwrap();
            prop_assert!((a - b).abs() < 1e-9, "ℓ={}: {} vs {}", l, a, b);
        }
    }

    #[test]
    fn pmf_invariants(params in prop::collection::vec(0.0f64..=1.0, 0..300)) {
        let d = poisson_binomial(&params).unwrap();
        prop_assert!(d.pmf.iter().all(|&p| p >= 0.0));
        prop_assert!((d.pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mean: f64 = d.pmf.iter().enumerate().map(|(j, p)| j as f64 * p).sum();
        prop_assert!((mean - d.mean()).abs() < 1e-12 * (1.0 + d.mean()));
    }

    #[test]
    fn complement_reverses_pmf(params in prop::collection::vec(0.0f64..=1.0, 0..80)) {
        let d = poisson_binomial(&params).unwrap();
        let flipped: Vec<f64> = params.iter().map(|l| 1.0 - l).collect();
        let e = poisson_binomial(&flipped).unwrap();
        let mut rev = e.pmf.clone();
        rev.reverse();
        for (a, b) in d.pmf.iter().zip(&rev) {
            prop_assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn sampling_is_reproducible(params in prop::collection::vec(0.0f64..=1.0, 0..50), seed in any::<u64>()) {
        let a = sample_count(&params, seed, 5000).unwrap();
        let b = sample_count(&params, seed, 5000).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.iter().all(|&s| s as usize <= params.len()));
    }

    #[test]
    fn entanglement_weights_normalized(params in prop::collection::vec(0.0f64..=1.0, 0..=12)) {
        let e = entanglement_spectrum_bruteforce(&params).unwrap();
        prop_assert!((e.total() - 1.0).abs() < 1e-12);
        let expected: f64 = params.iter().map(|&l| {
            let a = if l > 0.0 { -l * l.ln() } else { 0.0 };
            let b = if l < 1.0 { -(1.0 - l) * (1.0 - l).ln() } else { 0.0 };
            a + b
        }).sum();
        prop_assert!((e.von_neumann_entropy() - expected).abs() < 1e-12);
    }
}
