mod common;

use common::dense_symmetric_eigenvalues;
use feynman_clock::adiabatic::{build_adiabatic_clock, fit_gap_scaling, gap_scan, spectral_gap, GapScan};
use proptest::prelude::*;

/// Entry `(l, l')` of the interpolating clock matrix, written out piecewise.
fn piecewise_entry(k: usize, s: f64, l: usize, lp: usize) -> f64 {
    if l == lp {
        if l == 0 {
            s / 2.0
        } else if l == k {
            1.0 - s / 2.0
        } else {
            1.0
        }
    } else if l.abs_diff(lp) == 1 {
        -s / 2.0
    } else {
        0.0
    }
}

#[test]
fn matrix_matches_piecewise_definition() {
    for s in [0.0, 0.13, 0.5, 0.97, 1.0] {
        let m = build_adiabatic_clock::<f64>(4, s).unwrap();
        for l in 0..5 {
            for lp in 0..5 {
                assert_eq!(m.get(l, lp), piecewise_entry(4, s, l, lp));
            }
        }
    }
}

#[test]
fn hundred_gate_gap_location_and_bound() {
    let scan: GapScan<f64> = gap_scan(100, 257).unwrap();
    assert!(scan.s_min > 0.9 && scan.s_min <= 1.0, "{}", scan.s_min);
    assert!(scan.scaled_gap() >= std::f64::consts::PI.powi(2) / 8.0);
    println!("k=100: gap_min*k^2 = {:.4}, s_min = {:.5}", scan.scaled_gap(), scan.s_min);
}

#[test]
fn refined_minimum_is_located_to_one_in_ten_thousand() {
    let scan: GapScan<f64> = gap_scan(60, 257).unwrap();
    let fine: Vec<f64> = (0..=20_000).map(|i| scan.s_min - 1e-3 + i as f64 * 1e-7).filter(|s| *s <= 1.0).collect();
    let (best_s, _) = fine.iter().map(|&s| (s, spectral_gap(60, s).unwrap())).fold((0.0, f64::INFINITY), |b, c| {
        if c.1 < b.1 {
            c
        } else {
            b
        }
    });
    assert!((best_s - scan.s_min).abs() < 1e-4);
}

#[test]
fn ground_state_at_zero_coupling() {
    let scan: GapScan<f64> = gap_scan(7, 64).unwrap();
    assert_eq!(scan.gap[0], 1.0);
    assert_eq!(spectral_gap(50, 0.0).unwrap(), 1.0);
}

#[test]
fn gap_minima_follow_inverse_square_law() {
    let (scans, scaling) = fit_gap_scaling::<f64>(&[50, 100, 200, 400, 800], 257).unwrap();
    assert!((scaling.fit.exponent + 2.0).abs() <= 0.05, "{}", scaling.fit.exponent);
    assert!((scaling.runtime_exponent - 4.0).abs() <= 0.1);
    assert!(scans.iter().all(|s| s.satisfies_lower_bound(1e-10)));
    println!("fitted coefficient / (pi^2/8) = {:.4}", scaling.fit.coefficient / (std::f64::consts::PI.powi(2) / 8.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lowest_pair_matches_dense(k in 1usize..60, s in 0.0f64..=1.0) {
        let m = build_adiabatic_clock::<f64>(k, s).unwrap();
        let want = dense_symmetric_eigenvalues(&m.to_dense());
        prop_assert!((spectral_gap(k, s).unwrap() - (want[1] - want[0])).abs() <= 1e-12);
    }

    #[test]
    fn scan_invariants(k in 10usize..300) {
        let scan: GapScan<f64> = gap_scan(k, 64).unwrap();
        prop_assert!(scan.gap.iter().all(|&g| g >= 0.0 && g >= scan.gap_min));
        prop_assert!(scan.scaled_gap() >= std::f64::consts::PI.powi(2) / 8.0 - 1e-8);
        for w in scan.gap.windows(2) {
            prop_assert!(w[1] / w[0] < 10.0 && w[0] / w[1] < 10.0);
        }
    }
}

#[test]
fn coarse_grid_ratio_only_breaks_on_the_last_interval() {
    for k in [310usize, 400, 1000] {
        let scan: GapScan<f64> = gap_scan(k, 64).unwrap();
        let ratios: Vec<f64> = scan.gap.windows(2).map(|w| (w[1] / w[0]).max(w[0] / w[1])).collect();
        let (last, rest) = ratios.split_last().unwrap();
        assert!(rest.iter().all(|&r| r < 10.0), "k={k}");
        assert!(*last >= 10.0, "k={k}");
        assert!(scan.s_min > scan.s_grid[62]);
    }
    let fine: GapScan<f64> = gap_scan(1000, 257).unwrap();
    assert!(fine.gap.windows(2).all(|w| w[1] / w[0] < 10.0 && w[0] / w[1] < 10.0));
}
