use proptest::prelude::*;
use toeplab_models::*;

proptest! {
    #[test]
    fn spectra_lie_in_unit_interval_with_exact_complements(k in 1u32..200, theta in 0.05f64..3.1) {
        let specs = [
            cylinder_spectrum(k, cylinder_cutoff(k)).unwrap(),
            bargmann_disk_spectrum(k, 0.7, bargmann_cutoff(k, 0.7)).unwrap(),
            sphere_cap_spectrum(k, theta).unwrap(),
        ];
        for s in &specs {
            for (l, c) in s.pairs() {
                prop_assert!((0.0..=1.0).contains(&l) && (0.0..=1.0).contains(&c));
                prop_assert!((l + c - 1.0).abs() < 1e-14);
            }
            let ev = &s.eigenvalues;
            prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn cap_trace_is_area_fraction(k in 1u32..300, theta in 0.05f64..3.1) {
        // tr T = (k+1) u₀ for the cap of area 2πu₀
        let s = sphere_cap_spectrum(k, theta).unwrap();
        let (u0, _) = cap_parameter(theta);
        let tr: f64 = s.eigenvalues.iter().sum();
        prop_assert!((tr - (k as f64 + 1.0) * u0).abs() < 1e-9 * (k as f64 + 1.0));
    }

    #[test]
    fn complementary_caps_have_complementary_spectra(k in 1u32..100, theta in 0.05f64..3.1) {
        let a = sphere_cap_spectrum(k, theta).unwrap();
        let b = sphere_cap_spectrum(k, std::f64::consts::PI - theta).unwrap();
        let mut x: Vec<f64> = a.complements.clone();
        let mut y: Vec<f64> = b.eigenvalues.clone();
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        for (u, v) in x.iter().zip(&y) {
            prop_assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn annulus_is_difference_of_disks(k in 1u32..80, r1 in 0.1f64..0.6, dr in 0.05f64..0.6) {
        let r2 = r1 + dr;
        let n = bargmann_cutoff(k, r2);
        let ann = bargmann_annulus_spectrum(k, r1, r2, n).unwrap();
        let outer = bargmann_disk_spectrum(k, r2, n).unwrap();
        let inner = bargmann_disk_spectrum(k, r1, n).unwrap();
        let sum = |s: &Spectrum| s.eigenvalues.iter().sum::<f64>();
        prop_assert!((sum(&ann) - (sum(&outer) - sum(&inner))).abs() < 1e-9 * sum(&outer));
    }
}
