mod common;

use common::{dense_clock, dense_probability, nalgebra_expm};
use feynman_clock::clock::{build_clock_matrix, probability_series, success_probability, ClockSpectrum};
use feynman_clock::random::{seeded, uniform};
use proptest::prelude::*;

#[test]
fn clock_matrix_matches_dense_assembly() {
    let m = build_clock_matrix::<f64>(5).unwrap();
    let dense = dense_clock(5);
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(m.get(i, j), dense[(i, j)].re);
        }
    }
}

#[test]
fn amplitude_matches_dense_exponential() {
    let spec = ClockSpectrum::<f64>::new(4).unwrap();
    let g = nalgebra_expm(&dense_clock(4), 1.3);
    assert!((spec.amplitude(4, 0, 1.3).unwrap() - g[(4, 0)]).norm() < 1e-10);
}

#[test]
fn six_gate_probability_on_a_grid() {
    let grid: Vec<f64> = (0..=100).map(|i| i as f64 * 0.1).collect();
    let s = probability_series(6, &grid).unwrap();
    for (t, p) in grid.iter().zip(&s.probabilities) {
        assert!((p - dense_probability(6, *t)).abs() < 1e-10, "t={t}");
    }
}

#[test]
fn oracle_equivalence_for_small_chains() {
    let mut rng = seeded(12);
    for k in 1..=12 {
        for _ in 0..20 {
            let t = uniform(&mut rng, 0.0, 3.0 * (k + 2) as f64);
            let p = success_probability(k, t).unwrap();
            assert!((p - dense_probability(k, t)).abs() < 1e-10, "k={k} t={t}");
        }
    }
}

#[test]
fn long_chain_curve_has_one_dominant_peak() {
    let grid: Vec<f64> = (0..=2000).map(|i| 4900.0 + i as f64 * 0.1).collect();
    let s = probability_series(9999, &grid).unwrap();
    let (imax, pmax) =
        s.probabilities.iter().enumerate().fold((0, 0.0f64), |b, (i, &p)| if p > b.1 { (i, p) } else { b });
    let t_peak = grid[imax];
    assert!((t_peak - 5000.0).abs() < 20.0, "{t_peak}");
    let mut later_maxima = vec![];
    for i in imax + 1..grid.len() - 1 {
        let p = &s.probabilities;
        if p[i - 1] < p[i] && p[i] > p[i + 1] {
            later_maxima.push(p[i]);
        }
    }
    assert!(later_maxima.len() >= 2);
    assert!(later_maxima.iter().all(|&p| p < pmax));
    assert!(later_maxima.windows(2).all(|w| w[1] < w[0]));
    assert!(s.probabilities.iter().all(|&p| (0.0..=1.0 + 1e-12).contains(&p)));
}

fn spectrum_invariants(k: usize) -> Result<(), TestCaseError> {
    let spec = ClockSpectrum::<f64>::new(k).unwrap();
    let sorted = spec.sorted_eigenvalues();
    for j in 0..=k {
        prop_assert!((sorted[j] + sorted[k - j]).abs() <= 1e-12);
    }
    let m = build_clock_matrix::<f64>(k).unwrap();
    let vecs: Vec<Vec<f64>> = (0..=k).map(|j| spec.eigenvector(j)).collect();
    for (j, v) in vecs.iter().enumerate() {
        let norm: f64 = v.iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        let hv = m.apply(v);
        for (a, b) in hv.iter().zip(v) {
            prop_assert!((a - spec.eigenvalues()[j] * b).abs() <= 1e-10);
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((spec.component(k, j) - sign * spec.component(0, j)).abs() <= 1e-12);
    }
    for a in 0..=k {
        for b in a + 1..=k {
            let dot: f64 = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x * y).sum();
            prop_assert!(dot.abs() <= 1e-10);
        }
    }
    Ok(())
}

#[test]
fn spectrum_invariants_small_chains() {
    for k in 1..=40 {
        spectrum_invariants(k).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spectrum_invariants_random_chains(k in 1usize..150) {
        spectrum_invariants(k)?;
    }

    #[test]
    fn column_is_normalized(k in 1usize..=200, t in 0.0f64..500.0) {
        let spec = ClockSpectrum::<f64>::new(k).unwrap();
        let total: f64 = (0..=k).map(|j| spec.amplitude(j, 0, t).unwrap().norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn time_reversal_symmetry(k in 1usize..=200, t in 0.0f64..500.0) {
        let spec = ClockSpectrum::<f64>::new(k).unwrap();
        let forward = spec.success_probability(t);
        let back = spec.amplitude(0, k, t).unwrap().norm_sqr();
        prop_assert!((forward - back).abs() <= 1e-12);
    }

    #[test]
    fn end_to_end_sum_matches_general_amplitude(k in 1usize..=200, t in 0.0f64..500.0) {
        let spec = ClockSpectrum::<f64>::new(k).unwrap();
        let a = spec.amplitude(k, 0, t).unwrap().norm_sqr();
        prop_assert!((spec.success_probability(t) - a).abs() <= 1e-12);
    }

    #[test]
    fn series_probabilities_are_bounded(k in 1usize..500, start in 0.0f64..1000.0) {
        let grid: Vec<f64> = (0..50).map(|i| start + i as f64 * 0.7).collect();
        let s = probability_series(k, &grid).unwrap();
        for (p, a) in s.probabilities.iter().zip(&s.amplitudes) {
            prop_assert!(*p >= 0.0 && *p <= 1.0 + 1e-12);
            prop_assert_eq!(*p, a.norm_sqr());
        }
    }

    #[test]
    fn parallel_series_equals_pointwise(k in 1usize..300) {
        let grid: Vec<f64> = (0..64).map(|i| i as f64 * 1.3).collect();
        let s = probability_series(k, &grid).unwrap();
        let spec = ClockSpectrum::<f64>::new(k).unwrap();
        for (t, p) in grid.iter().zip(&s.probabilities) {
            prop_assert_eq!(*p, spec.success_probability(*t));
        }
    }
}

#[test]
fn single_precision_probability_tracks_double() {
    for k in [3usize, 10, 50] {
        for t in [0.5, 3.0, 17.0] {
            let p32 = success_probability::<f32>(k, t as f32).unwrap() as f64;
            let p64 = success_probability::<f64>(k, t).unwrap();
            assert!((p32 - p64).abs() < 1e-4, "k={k} t={t}");
        }
    }
}
