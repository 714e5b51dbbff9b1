use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use toeplab_models::*;
use toeplab_specfun::quad::gauss_kronrod;
use toeplab_specfun::{er, ln_gamma};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn cylinder_examples() {
    let s = cylinder_spectrum(100, cylinder_cutoff(100)).unwrap();
    assert!(s.eigenvalues.contains(&0.5));
    let n = s.len();
    for i in 0..n {
        assert!((s.eigenvalues[i] - s.complements[n - 1 - i]).abs() < 1e-16);
    }
    let s = cylinder_spectrum(400, cylinder_cutoff(400)).unwrap();
    // ℓ = 20 sits 20 places above the middle
    let mid = s.len() / 2;
    assert_eq!(s.eigenvalues[mid + 20], er(1.0));
    assert!(matches!(
        cylinder_spectrum(400, 150),
        Err(ModelError::CutoffTooSmall { .. })
    ));
    assert!(s.tail_power_sum(1.0) < 1e-40);
}

#[test]
fn closed_spectra_avoid_exact_endpoints() {
    for s in [
        cylinder_spectrum(200, cylinder_cutoff(200)).unwrap(),
        bargmann_disk_spectrum(50, 1.0, bargmann_cutoff(50, 1.0)).unwrap(),
        sphere_cap_spectrum(30, 1.0).unwrap(),
    ] {
        assert!(s.pairs().all(|(l, c)| l > 0.0 && c > 0.0), "{}", s.model);
    }
}

fn disk_radial_oracle(k: f64, r: f64, n: usize) -> f64 {
    let nf = n as f64;
    let lf = ln_gamma(nf + 1.0);
    gauss_kronrod(
        |rho: f64| {
            if rho == 0.0 {
                return if n == 0 { 2.0 * k * 0.0 } else { 0.0 };
            }
            2.0 * k * rho * (nf * (k * rho * rho).ln() - k * rho * rho - lf).exp()
        },
        0.0,
        r,
        1e-16,
        1e-14,
        2000,
    )
    .unwrap()
    .value
}

#[test]
fn disk_examples() {
    let k = 50;
    let s = bargmann_disk_spectrum(k, 1.0, bargmann_cutoff(k, 1.0)).unwrap();
    // spectrum is ascending, so λ_n is at the back
    let lam: Vec<f64> = s.eigenvalues.iter().rev().copied().collect();
    assert!((lam[0] - (1.0 - (-50.0f64).exp())).abs() < 1e-15);
    assert!((s.complements.last().unwrap() - (-50.0f64).exp()).abs() < 1e-30);
    // λ_n rounds to 1 for small n, so strictness is checked on 1 - λ_n
    let comp: Vec<f64> = s.complements.iter().rev().copied().collect();
    for (w, c) in lam.windows(2).zip(comp.windows(2)) {
        assert!(w[1] <= w[0] && c[1] >= c[0] && (w[1] < w[0] || c[1] > c[0]));
    }
    for n in [0usize, 10, 40, 49, 50, 51, 70, 120] {
        let oracle = disk_radial_oracle(50.0, 1.0, n);
        assert!((lam[n] - oracle).abs() < 1e-10, "n={n}: {} vs {oracle}", lam[n]);
    }
    assert!(bargmann_disk_spectrum(50, 1.0, 100).is_err());
}

#[test]
fn annulus_examples() {
    let k = 200;
    let n_max = bargmann_cutoff(k, 1.5);
    let ann = bargmann_annulus_spectrum(k, 1e-9, 1.5, n_max).unwrap();
    let disk = bargmann_disk_spectrum(k, 1.5, n_max).unwrap();
    for (a, d) in ann.eigenvalues.iter().zip(&disk.eigenvalues) {
        assert!((a - d).abs() < 1e-12);
    }
    let ann = bargmann_annulus_spectrum(k, 0.7, 1.5, n_max).unwrap();
    // beyond n ≈ 2kR₂² the eigenvalues underflow
    assert!(ann.pairs().rev().take(900).all(|(l, c)| l > 0.0 && c > 0.0));
    let trace: f64 = ann.eigenvalues.iter().sum();
    let area = 2.0 * PI * (1.5f64.powi(2) - 0.7f64.powi(2));
    let expected = k as f64 / (2.0 * PI) * area;
    assert!(((trace - expected) / expected).abs() < 0.01);
    assert!(
        (ann.domain.boundary_volume - 2.0 * PI * 2.2 * BARGMANN_METRIC_SCALE).abs() < 1e-12
    );
}

fn cap_oracle(k: u32, theta0: f64, l: u32) -> f64 {
    let kf = k as f64;
    let lf = l as f64;
    let f = |t: f64| {
        let s = (0.5 * t).sin();
        let c = (0.5 * t).cos();
        if s == 0.0 && l > 0 {
            return 0.0;
        }
        (2.0 * lf * s.ln() + 2.0 * (kf - lf) * c.ln()).exp() * t.sin()
    };
    let num = gauss_kronrod(f, 0.0, theta0, 1e-18, 1e-14, 2000).unwrap().value;
    let den = gauss_kronrod(f, 0.0, PI, 1e-18, 1e-14, 2000).unwrap().value;
    num / den
}

#[test]
fn sphere_cap_examples() {
    let k = 10;
    let s = sphere_cap_spectrum(k, PI / 3.0).unwrap();
    assert_eq!(s.len(), 11);
    let mut oracle: Vec<f64> = (0..=k).map(|l| cap_oracle(k, PI / 3.0, l)).collect();
    oracle.sort_by(f64::total_cmp);
    for (a, b) in s.eigenvalues.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
    for k in [7u32, 40, 300] {
        let theta0 = 1.234;
        let s = sphere_cap_spectrum(k, theta0).unwrap();
        let trace: f64 = s.eigenvalues.iter().sum();
        let (u0, _) = cap_parameter(theta0);
        assert!((trace - (k as f64 + 1.0) * u0).abs() < 1e-12 * k as f64, "k={k}");
    }
    let hemi = sphere_cap_spectrum(25, PI / 2.0).unwrap();
    assert_eq!(hemi.len(), 26);
    let n = hemi.len();
    for i in 0..n {
        assert!((hemi.eigenvalues[i] - hemi.complements[n - 1 - i]).abs() < 1e-14);
    }
    assert!(sphere_cap_spectrum(5, 0.0).is_err());
    assert!(sphere_cap_spectrum(5, PI).is_err());
}

fn max_offdiag(g: &DMatrix<Complex64>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            if i != j {
                m = m.max(g[(i, j)].norm());
            }
        }
    }
    m
}

#[test]
fn full_domain_gives_identity() {
    for model in [
        ModelSpec::new(Geometry::Sphere, DomainSpec::full(), 12).unwrap(),
        ModelSpec::new(Geometry::BargmannPlane, DomainSpec::full(), 12)
            .unwrap()
            .with_truncation(30),
    ] {
        let g = toeplitz_matrix(&model).unwrap();
        let d = g.nrows();
        assert!((g - DMatrix::<Complex64>::identity(d, d)).norm() < 1e-14);
    }
    // a star-shaped region covering everything but a tiny hole
    let model = ModelSpec::new(
        Geometry::Sphere,
        DomainSpec::star_shaped(PolarBoundary::new(|_| PI - 1e-9)).unwrap(),
        12,
    )
    .unwrap();
    let g = toeplitz_matrix(&model).unwrap();
    assert!((g - DMatrix::<Complex64>::identity(13, 13)).norm() < 1e-12);
}

#[test]
fn rotationally_symmetric_domains_are_diagonal() {
    let k = 20;
    let star = ModelSpec::new(
        Geometry::Sphere,
        DomainSpec::star_shaped(PolarBoundary::new(|_| 1.1)).unwrap(),
        k,
    )
    .unwrap();
    let g = toeplitz_matrix(&star).unwrap();
    assert!(max_offdiag(&g) < 1e-10);
    let closed = sphere_cap_spectrum(k, 1.1).unwrap();
    let mut diag: Vec<f64> = (0..=k as usize).map(|i| g[(i, i)].re).collect();
    diag.sort_by(f64::total_cmp);
    for (a, b) in diag.iter().zip(&closed.eigenvalues) {
        assert!((a - b).abs() < 1e-11);
    }
    let cap = DomainSpec::polar_cap(1.1).unwrap();
    assert!((star.domain.boundary_volume - cap.boundary_volume).abs() < 1e-9);

    let centred = ModelSpec::new(
        Geometry::BargmannPlane,
        DomainSpec::shifted_disk(1.0, c(0.0, 0.0)).unwrap(),
        30,
    )
    .unwrap();
    let g = toeplitz_matrix(&centred).unwrap();
    assert!(max_offdiag(&g) < 1e-10);
    let disk = bargmann_disk_spectrum(30, 1.0, centred.basis_cutoff()).unwrap();
    let mut diag: Vec<f64> = (0..g.nrows()).map(|i| g[(i, i)].re).collect();
    diag.sort_by(f64::total_cmp);
    for (a, b) in diag.iter().zip(&disk.eigenvalues) {
        assert!((a - b).abs() < 1e-11);
    }
}

#[test]
fn shifted_disk_is_a_translate_of_the_centred_disk() {
    let k = 40;
    let shifted = ModelSpec::new(
        Geometry::BargmannPlane,
        DomainSpec::shifted_disk(1.0, c(0.3, 0.2)).unwrap(),
        k,
    )
    .unwrap();
    let g = toeplitz_matrix(&shifted).unwrap();
    // Hermitian by construction
    assert!((&g - g.adjoint()).norm() < 1e-13);
    let s = matrix_spectrum(&shifted).unwrap();
    let d = bargmann_disk_spectrum(k, 1.0, shifted.basis_cutoff()).unwrap();
    let p2 = |sp: &Spectrum| sp.pairs().map(|(l, c)| l * c).sum::<f64>();
    // Weyl-law error budget O(1) on a quantity of size √k
    assert!((p2(&s) - p2(&d)).abs() < 1.0);
    // translations act unitarily, so the spectra coincide up to truncation
    for (a, b) in s.eigenvalues.iter().rev().zip(d.eigenvalues.iter().rev()).take(80) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
    // exact trace identity: tr G = Σ λ
    let tr: f64 = (0..g.nrows()).map(|i| g[(i, i)].re).sum();
    assert!((tr - s.eigenvalues.iter().sum::<f64>()).abs() < 1e-9);
}

#[test]
fn complement_spectra_reflect() {
    let cap = ModelSpec::new(Geometry::Sphere, DomainSpec::polar_cap(0.9).unwrap(), 15).unwrap();
    let a = spectrum(&cap).unwrap();
    let mut comp_model = cap.clone();
    comp_model.domain = comp_model.domain.complement();
    let b = spectrum(&comp_model).unwrap();
    for (x, y) in a.eigenvalues.iter().zip(b.eigenvalues.iter().rev()) {
        assert!((x - (1.0 - y)).abs() < 1e-15);
    }
    let bm = matrix_spectrum(&comp_model).unwrap();
    for (x, y) in a.eigenvalues.iter().zip(bm.eigenvalues.iter().rev()) {
        assert!((x - (1.0 - y)).abs() < 1e-8);
    }
}

#[test]
fn star_shaped_region_spectrum() {
    let boundary = PolarBoundary::new(|phi: f64| 1.0 + 0.3 * phi.cos() + 0.1 * (2.0 * phi).sin());
    let model = ModelSpec::new(Geometry::Sphere, DomainSpec::star_shaped(boundary).unwrap(), 60).unwrap();
    let s = spectrum(&model).unwrap();
    assert_eq!(s.len(), 61);
    assert!(!s.exact);
    // trace equals (k+1)·area/(2π); area = ∫ u_max(φ) dφ
    let area = gauss_kronrod(
        |phi: f64| cap_parameter(1.0 + 0.3 * phi.cos() + 0.1 * (2.0 * phi).sin()).0,
        0.0,
        2.0 * PI,
        1e-14,
        1e-14,
        500,
    )
    .unwrap()
    .value;
    let trace: f64 = s.eigenvalues.iter().sum();
    assert!((trace - 61.0 * area / (2.0 * PI)).abs() < 1e-9);
}

#[test]
fn eigensolver_examples() {
    let id = DMatrix::<Complex64>::identity(5, 5);
    assert_eq!(hermitian_eigenvalues(&id).unwrap(), vec![1.0; 5]);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.9, 0.0), c(0.1, 0.0)]));
    let v = hermitian_eigenvalues(&d).unwrap();
    assert!((v[0] - 0.1).abs() < 1e-15 && (v[1] - 0.9).abs() < 1e-15);
    let bad = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]);
    assert!(matches!(hermitian_eigenvalues(&bad), Err(ModelError::NotHermitian { .. })));
}

#[test]
fn eigensolver_trace_identities() {
    // deterministic pseudo-random Hermitian 8×8
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let mut h = DMatrix::<Complex64>::zeros(8, 8);
    for i in 0..8 {
        h[(i, i)] = c(next(), 0.0);
        for j in i + 1..8 {
            let z = c(next(), next());
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    let (vals, vecs) = hermitian_eigen(&h).unwrap();
    let tr: f64 = (0..8).map(|i| h[(i, i)].re).sum();
    let fro2: f64 = h.iter().map(|z| z.norm_sqr()).sum();
    assert!((vals.iter().sum::<f64>() - tr).abs() < 1e-10);
    assert!((vals.iter().map(|v| v * v).sum::<f64>() - fro2).abs() < 1e-10);
    for w in vals.windows(2) {
        assert!(w[0] <= w[1]);
    }
    for (i, &l) in vals.iter().enumerate() {
        let v = vecs.column(i);
        assert!((&h * v - v * c(l, 0.0)).norm() < 1e-8 * h.norm());
    }
}

#[test]
fn fourier_matrix_examples() {
    let full = fourier_interval_matrix(16, &[CircleArc::new(0.3, 2.0 * PI)]).unwrap();
    assert!((full - DMatrix::<Complex64>::identity(17, 17)).norm() < 1e-14);
    let arc = CircleArc::new(0.4, 1.9);
    let m = fourier_interval_matrix(12, &[arc]).unwrap();
    for l in 0..13usize {
        for mm in 0..13usize {
            let j = mm as f64 - l as f64;
            let re = gauss_kronrod(|x: f64| (j * x).cos(), 0.4, 2.3, 1e-15, 1e-14, 200).unwrap().value;
            let im = gauss_kronrod(|x: f64| (j * x).sin(), 0.4, 2.3, 1e-15, 1e-14, 200).unwrap().value;
            assert!((m[(l, mm)] - c(re, im) / (2.0 * PI)).norm() < 1e-13);
        }
    }
    assert!(matches!(
        fourier_interval_matrix(8, &[CircleArc::new(0.0, 2.0), CircleArc::new(1.5, 1.0)]),
        Err(ModelError::OverlappingArcs(_))
    ));
    assert!(fourier_interval_matrix(8, &[CircleArc::new(6.0, 1.0), CircleArc::new(0.5, 1.0)]).is_err());
    assert_eq!(arc_boundary_points(&[arc]), 2);
}

fn coherent_series(k: f64, r: f64, x: f64) -> f64 {
    // ‖e_x‖²_A = (k/2π) Σ λ_n Pois(n; k|x|²) on the centred disk
    let s = bargmann_disk_spectrum(k as u32, r, bargmann_cutoff(k as u32, r.max(x))).unwrap();
    let mu = k * x * x;
    let mut total = 0.0;
    for (n, lam) in s.eigenvalues.iter().rev().enumerate() {
        let nf = n as f64;
        let pois = if mu == 0.0 {
            if n == 0 { 1.0 } else { 0.0 }
        } else {
            (nf * mu.ln() - mu - ln_gamma(nf + 1.0)).exp()
        };
        total += lam * pois;
    }
    (k / (2.0 * PI) * total).sqrt()
}

#[test]
fn coherent_norm_matches_series() {
    for (k, x) in [(50u32, 0.0), (50, 0.6), (100, 1.3), (200, 1.5)] {
        let model = ModelSpec::new(Geometry::BargmannPlane, DomainSpec::disk(1.0).unwrap(), k).unwrap();
        let q = coherent_norm_on_domain(&model, c(x, 0.0)).unwrap();
        let s = coherent_series(k as f64, 1.0, x);
        assert!(((q - s) / s).abs() < 1e-7, "k={k} x={x}: {q} vs {s}");
    }
}

#[test]
fn coherent_norm_behaviour() {
    // at the centre the ratio is λ_0 = 1 - e^{-k}
    for k in [2u32, 5, 10, 40, 160] {
        let model = ModelSpec::new(Geometry::BargmannPlane, DomainSpec::disk(1.0).unwrap(), k).unwrap();
        let n = coherent_norm_on_domain(&model, c(0.0, 0.0)).unwrap();
        let ratio = n * n / (k as f64 / (2.0 * PI));
        assert!((ratio - (1.0 - (-(k as f64)).exp())).abs() < 1e-9, "k={k}: {ratio}");
    }
    // exponential decay away from the disk
    let x = c(1.5, 0.0);
    let ks = [50u32, 100, 200];
    let logs: Vec<f64> = ks
        .iter()
        .map(|&k| {
            let model = ModelSpec::new(Geometry::BargmannPlane, DomainSpec::disk(1.0).unwrap(), k).unwrap();
            coherent_norm_on_domain(&model, x).unwrap().ln()
        })
        .collect();
    let s1 = (logs[1] - logs[0]) / 50.0;
    let s2 = (logs[2] - logs[1]) / 100.0;
    assert!(s1 < 0.0 && s2 < 0.0);
    assert!(((s1 - s2) / s2).abs() < 0.2, "slopes {s1} {s2}");
    let model = ModelSpec::new(Geometry::BargmannPlane, DomainSpec::disk(1.0).unwrap(), 200).unwrap();
    let v = coherent_norm_on_domain(&model, x).unwrap();
    assert!(v < 1e-6 * (200f64).sqrt());
}

#[test]
fn sampled_sphere_frame() {
    let k = 8;
    let kind = DomainKind::PolarCap { theta0: 1.3 };
    let b = sphere_sampled_basis(k, &kind).unwrap();
    let gram = b.values.adjoint() * &b.values;
    assert!((gram - DMatrix::<Complex64>::identity(9, 9)).norm() < 1e-12);
    let g = b.values.adjoint() * b.projector() * &b.values;
    let model = ModelSpec::new(Geometry::Sphere, DomainSpec::polar_cap(1.3).unwrap(), k).unwrap();
    let direct = toeplitz_matrix(&model).unwrap();
    assert!((g - direct).norm() < 1e-12);
}

#[test]
fn spectrum_csv_layout() {
    let s = sphere_cap_spectrum(3, 1.0).unwrap();
    let csv = s.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# schema=v1");
    assert_eq!(lines[1], "# model,k,n,boundary_volume");
    assert!(lines[2].starts_with("# sphere polar_cap"));
    assert_eq!(lines.len(), 3 + 4);
    let v: f64 = lines[3].parse().unwrap();
    assert_eq!(v, s.eigenvalues[0]);
}

#[test]
fn degenerate_domains() {
    let m = ModelSpec::new(Geometry::Sphere, DomainSpec::empty(), 9).unwrap();
    let s = spectrum(&m).unwrap();
    assert_eq!(s.eigenvalues, vec![0.0; 10]);
    let m = ModelSpec::new(Geometry::Sphere, DomainSpec::full(), 9).unwrap();
    assert_eq!(spectrum(&m).unwrap().eigenvalues, vec![1.0; 10]);
    assert!(ModelSpec::new(Geometry::Sphere, DomainSpec::disk(1.0).unwrap(), 9).is_err());
}
