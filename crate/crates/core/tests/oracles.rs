use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use gaussprep::metrics::{fidelity, pruning_fidelity_bound};
use gaussprep::reference::{
    closed_form_probabilities, dft_oracle, product_amplitudes_oracle, GaussianSpec,
};
use gaussprep::synthesis::{build_exponential_layer, build_gaussian_prep, build_qft};
use gaussprep::{count_gates, simulate, PruningPolicy, StateVector};

/// Textbook DFT `N^{-1/2} Σ_x a_x e^{2πixk/N}`, independent of the crate's oracle.
fn naive_dft(a: &[Complex64]) -> Vec<Complex64> {
    let len = a.len();
    let scale = 1.0 / (len as f64).sqrt();
    (0..len)
        .map(|k| {
            a.iter()
                .enumerate()
                .map(|(x, v)| {
                    v * Complex64::from_polar(scale, 2.0 * PI * (x * k) as f64 / len as f64)
                })
                .sum()
        })
        .collect()
}

fn random_state(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| {
            let raw: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            raw.into_iter().map(|c| c / norm).collect()
        })
}

#[test]
fn qft_columns_match_dft_n4() {
    let qft = build_qft(4, &PruningPolicy::full()).unwrap();
    for j in 0..16 {
        let mut s = StateVector::basis(4, j).unwrap();
        s.apply_circuit(&qft).unwrap();
        let mut e = vec![Complex64::new(0.0, 0.0); 16];
        e[j] = Complex64::new(1.0, 0.0);
        let col = dft_oracle(&e).unwrap();
        for (a, b) in s.amplitudes().iter().zip(&col) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}

#[test]
fn dft_oracle_matches_naive() {
    let a: Vec<Complex64> = (0..32)
        .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
        .collect();
    for (x, y) in dft_oracle(&a).unwrap().iter().zip(naive_dft(&a)) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn layer_output_is_product_state() {
    for n in 1..=8 {
        for beta in [0.25, 1.0, 2.5, 7.0] {
            let s = simulate(&build_exponential_layer(n, beta).unwrap()).unwrap();
            let oracle = product_amplitudes_oracle(n, beta).unwrap();
            for (a, b) in s.amplitudes().iter().zip(&oracle) {
                assert!((a - Complex64::new(*b, 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn pruned_counts_never_exceed_full() {
    let spec = GaussianSpec::default();
    for n in 1..=40 {
        let full =
            count_gates(&build_gaussian_prep(n, &spec, &PruningPolicy::full(), None).unwrap());
        for delta in [1e-4, 0.0123, 0.01, 0.1, 1.0, 4.0] {
            let policy = PruningPolicy::new(delta).unwrap();
            let cut = count_gates(&build_gaussian_prep(n, &spec, &policy, None).unwrap());
            assert!(cut.cphase <= full.cphase);
            assert_eq!(cut.cphase + policy.pruned_cphase(n), full.cphase);
            assert_eq!(full.total - cut.total, policy.pruned_cphase(n));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn qft_is_the_dft(a in (1usize..=6).prop_flat_map(random_state)) {
        let n = a.len().trailing_zeros() as usize;
        let mut s = StateVector::from_amplitudes(a.clone()).unwrap();
        s.apply_circuit(&build_qft(n, &PruningPolicy::full()).unwrap()).unwrap();
        for (x, y) in s.amplitudes().iter().zip(naive_dft(&a)) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn three_paths_agree(n in 2usize..=9, beta in 0.05f64..8.0) {
        let spec = GaussianSpec::default();
        let sim = simulate(&build_gaussian_prep(n, &spec, &PruningPolicy::full(), Some(beta)).unwrap())
            .unwrap()
            .probabilities();
        let alpha: Vec<Complex64> = product_amplitudes_oracle(n, beta)
            .unwrap()
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        let half = 1usize << (n - 1);
        let dft = naive_dft(&alpha);
        let closed = closed_form_probabilities(n, beta, true).unwrap();
        for k in 0..sim.len() {
            prop_assert!((sim[k] - dft[k ^ half].norm_sqr()).abs() < 1e-10);
            prop_assert!((sim[k] - closed[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn pruning_respects_bound(n in 2usize..=11, beta in 0.25f64..5.0, delta in 1e-3f64..0.3) {
        let spec = GaussianSpec::default();
        let full = simulate(&build_gaussian_prep(n, &spec, &PruningPolicy::full(), Some(beta)).unwrap()).unwrap();
        let policy = PruningPolicy::new(delta).unwrap();
        let cut = simulate(&build_gaussian_prep(n, &spec, &policy, Some(beta)).unwrap()).unwrap();
        prop_assert!(fidelity(&full, &cut).unwrap() >= pruning_fidelity_bound(n, delta, false) - 1e-12);
    }
}
