use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use spectra_core::analysis::hausdorff;
use spectra_core::operators::{OperatorKind, OperatorParams, RationalAlpha, ThetaScope};
use spectra_core::spectra::{
    branch_bands, compute_spectrum, eigenphases, grid_error_bound, merge_bands, merge_intervals,
    mother_spectrum, spectrum_fixed_theta, GridSpec, SpectrumSet, Sweep,
};

fn params(
    kind: OperatorKind,
    kappa: f64,
    lambda: f64,
    p: u64,
    q: u64,
    theta: ThetaScope,
) -> OperatorParams {
    OperatorParams::new(
        kind,
        kappa,
        lambda,
        RationalAlpha::new(p, q).unwrap(),
        theta,
    )
    .unwrap()
}

#[test]
fn refinement_consistency() {
    for kind in OperatorKind::ALL {
        for theta in [ThetaScope::Fixed(0.3), ThetaScope::Mother] {
            let p = params(kind, 0.8, 1.3, 3, 7, theta);
            for n in [4, 8] {
                let g = GridSpec::square(n).unwrap();
                let a = compute_spectrum(&p, &g).unwrap();
                let b = compute_spectrum(&p, &g.refined()).unwrap();
                let bound = a.error_bound() + b.error_bound();
                assert!(hausdorff(&a, &b).unwrap() <= bound, "{kind} {theta}");
            }
        }
    }
}

#[test]
fn theta_grid_on_unit_interval_matches_mother() {
    for q in 2..=5u64 {
        for kind in OperatorKind::ALL {
            let n = 6;
            let m = params(kind, 1.0, 1.0, 1, q, ThetaScope::Mother);
            let g = GridSpec::square(n).unwrap();
            let mother = mother_spectrum(&m, &g).unwrap();
            let mut samples = Vec::new();
            for k in 0..(n * q as usize) {
                let theta = k as f64 / (n * q as usize) as f64;
                let f = m.with_theta(ThetaScope::Fixed(theta)).unwrap();
                samples.extend_from_slice(
                    spectrum_fixed_theta(&f, &GridSpec::new(n, 1).unwrap())
                        .unwrap()
                        .points(),
                );
            }
            let wide = SpectrumSet::from_samples(m, g, samples, mother.error_bound()).unwrap();
            assert!(
                hausdorff(&mother, &wide).unwrap() <= 2.0 * mother.error_bound() + 1e-12,
                "{kind} q={q}"
            );
        }
    }
}

#[test]
fn unitary_harper_is_exponential_of_harper() {
    let kappa = 0.9;
    for (p, q) in [(1, 2), (8, 13)] {
        let g = GridSpec::new(12, 1).unwrap();
        let h = spectrum_fixed_theta(
            &params(OperatorKind::H, 0.0, 1.4, p, q, ThetaScope::Fixed(0.2)),
            &g,
        )
        .unwrap();
        let u = spectrum_fixed_theta(
            &params(OperatorKind::UH, kappa, 1.4, p, q, ThetaScope::Fixed(0.2)),
            &g,
        )
        .unwrap();
        let mapped = SpectrumSet::from_samples(
            *u.params(),
            g,
            h.real_values()
                .iter()
                .map(|&e| Complex64::from_polar(1.0, -kappa * e))
                .collect(),
            0.0,
        )
        .unwrap();
        assert!(hausdorff(&mapped, &u).unwrap() <= 1e-10);
    }
}

#[test]
fn fig2_ring_has_expected_support() {
    let p = params(OperatorKind::UKH, 1.0, 1.0, 8, 13, ThetaScope::Mother);
    let g = GridSpec::square(100).unwrap();
    let s = mother_spectrum(&p, &g).unwrap();
    assert!((s.error_bound() - 2.0 * TAU / 1300.0).abs() < 1e-15);
    assert!(s.points().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    let bands = branch_bands(&Sweep::run(&p, &g).unwrap()).unwrap();
    assert!(bands.len() >= 2 && bands.len() <= 13);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let p = params(OperatorKind::UORDKR, 1.0, 1.0, 5, 8, ThetaScope::Mother);
    let g = GridSpec::square(7).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| mother_spectrum(&p, &g).unwrap());
    let b = four.install(|| mother_spectrum(&p, &g).unwrap());
    assert_eq!(a, b);
}

#[test]
fn band_count_three_for_q3() {
    let p = params(OperatorKind::H, 0.0, 1.0, 1, 3, ThetaScope::Mother);
    let s = mother_spectrum(&p, &GridSpec::square(100).unwrap()).unwrap();
    let b = merge_bands(&s, 4.0 * s.error_bound()).unwrap();
    assert_eq!(b.len(), 3);
}

#[test]
fn error_bound_scales_with_grid() {
    let p = params(OperatorKind::UKH, 1.0, 2.0, 8, 13, ThetaScope::Mother);
    let a = grid_error_bound(&p, &GridSpec::square(10).unwrap());
    let b = grid_error_bound(&p, &GridSpec::square(20).unwrap());
    assert!((a - 2.0 * b).abs() < 1e-15);
    assert!((a - TAU * 3.0 / 130.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn merge_is_idempotent(phases in prop::collection::vec(-3.1f64..3.1, 1..60), gap in 0.01f64..1.0) {
        let p = params(OperatorKind::UKH, 1.0, 1.0, 1, 2, ThetaScope::Fixed(0.0));
        let pts = phases.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        let s = SpectrumSet::from_samples(p, GridSpec::square(1).unwrap(), pts, 0.0).unwrap();
        let b = merge_bands(&s, gap).unwrap();
        let again = merge_intervals(b.kind, &b.bands, gap).unwrap();
        prop_assert_eq!(&again, &b);
        for w in b.bands.windows(2) {
            prop_assert!(w[1].lo - w[0].hi > gap);
        }
        for t in eigenphases(&s).unwrap() {
            prop_assert!(b.bands.iter().any(|band| band.contains(b.kind, t)));
        }
    }

    #[test]
    fn real_merge_is_idempotent(values in prop::collection::vec(-4.0f64..4.0, 1..60), gap in 0.01f64..1.0) {
        let p = params(OperatorKind::H, 0.0, 1.0, 1, 2, ThetaScope::Fixed(0.0));
        let pts = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let s = SpectrumSet::from_samples(p, GridSpec::square(1).unwrap(), pts, 0.0).unwrap();
        let b = merge_bands(&s, gap).unwrap();
        prop_assert_eq!(&merge_intervals(b.kind, &b.bands, gap).unwrap(), &b);
        prop_assert!(b.bands.windows(2).all(|w| w[1].lo - w[0].hi > gap));
    }
}
