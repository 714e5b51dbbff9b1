use num_complex::Complex64;
use proptest::prelude::*;
use toeplab_kernels::*;

fn point() -> impl Strategy<Value = Point> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(x, y)| vec![Complex64::new(x, y)])
}

proptest! {
    #[test]
    fn kernel_is_hermitian(k in 1u32..200, x in point(), y in point()) {
        let kern = BargmannKernel::new(k, 1).unwrap();
        let a = kern.eval(&x, &y);
        let b = kern.eval(&y, &x).conj();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
    }

    #[test]
    fn modulus_is_bounded_by_diagonal(k in 1u32..200, x in point(), y in point()) {
        let kern = BargmannKernel::new(k, 1).unwrap();
        prop_assert!(kern.abs(&x, &y) <= kern.diagonal() * (1.0 + 1e-14));
    }

    #[test]
    fn cyclic_phase_is_translation_invariant(
        k in 1u32..100,
        pts in prop::collection::vec(point(), 1..6),
        shift in point(),
    ) {
        let kern = BargmannKernel::new(k, 1).unwrap();
        let a = cyclic_kernel(&kern, &pts).unwrap();
        let moved: Vec<Point> = pts.iter().map(|p| vec![p[0] + shift[0]]).collect();
        let b = cyclic_kernel(&kern, &moved).unwrap();
        prop_assert!((a.log_amplitude - b.log_amplitude).abs() < 1e-9);
        let d = (a.phase - b.phase).rem_euclid(2.0 * std::f64::consts::PI);
        prop_assert!(d.min(2.0 * std::f64::consts::PI - d) < 1e-9);
    }

    #[test]
    fn reversing_the_cycle_conjugates(k in 1u32..100, pts in prop::collection::vec(point(), 1..6)) {
        let kern = BargmannKernel::new(k, 1).unwrap();
        let a = cyclic_kernel(&kern, &pts).unwrap().value();
        let mut rev = pts.clone();
        rev.reverse();
        let b = cyclic_kernel(&kern, &rev).unwrap().value();
        prop_assert!((a - b.conj()).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn covariogram_is_monotone_and_bounded(r in 0.1f64..3.0, u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let d = Disk::new(r).unwrap();
        let (lo, hi) = (2.0 * r * u.min(v), 2.0 * r * u.max(v));
        prop_assert!(d.covariogram(lo) >= d.covariogram(hi) - 1e-12);
        prop_assert!(d.covariogram(0.0) <= d.area() * (1.0 + 1e-12));
    }
}
