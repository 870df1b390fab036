use gaussprep::reference::GaussianSpec;
use gaussprep::sampler::{sample_counts, tv_distance};
use gaussprep::synthesis::build_gaussian_prep;
use gaussprep::{simulate, PruningPolicy};
use proptest::prelude::*;

fn prepared(n: usize) -> gaussprep::StateVector {
    let spec = GaussianSpec::default();
    simulate(&build_gaussian_prep(n, &spec, &PruningPolicy::default(), None).unwrap()).unwrap()
}

#[test]
fn fifty_thousand_shots_track_the_distribution() {
    let state = prepared(5);
    let exact = state.probabilities();
    for seed in [1, 2024, 77_777] {
        let h = sample_counts(&state, 50_000, seed).unwrap();
        assert!(tv_distance(&h.frequencies(), &exact).unwrap() <= 0.02);
    }
}

#[test]
fn tv_shrinks_with_more_shots() {
    let state = prepared(6);
    let exact = state.probabilities();
    let mean_tv = |shots: u64| -> f64 {
        (0..8u64)
            .map(|seed| {
                let h = sample_counts(&state, shots, seed).unwrap();
                tv_distance(&h.frequencies(), &exact).unwrap()
            })
            .sum::<f64>()
            / 8.0
    };
    let tvs: Vec<f64> = [500, 5_000, 50_000, 500_000]
        .iter()
        .map(|&s| mean_tv(s))
        .collect();
    assert!(tvs.windows(2).all(|w| w[1] < w[0]), "{tvs:?}");
}

#[test]
fn zero_probability_bins_are_never_hit() {
    let state = prepared(7);
    let exact = state.probabilities();
    let h = sample_counts(&state, 200_000, 5).unwrap();
    for (c, p) in h.counts.iter().zip(&exact) {
        if *p < 1e-30 {
            assert_eq!(*c, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_sum_to_shots_and_repeat(n in 1usize..=6, shots in 1u64..5_000, seed in any::<u64>()) {
        let state = prepared(n);
        let a = sample_counts(&state, shots, seed).unwrap();
        prop_assert_eq!(a.counts.iter().sum::<u64>(), shots);
        prop_assert_eq!(a.counts.len(), 1 << n);
        prop_assert_eq!(&a, &sample_counts(&state, shots, seed).unwrap());
    }
}
