use proptest::prelude::*;

use lrhorn::horn::HornSystem;
use lrhorn::spectra::{random_triple, sample_points, spectrum_point, verify_sample_batch};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectra_are_sorted_and_traceless(n in 1usize..=8, seed in any::<u64>()) {
        let t = random_triple(n, seed);
        t.validate().unwrap();
        let p = spectrum_point(&t).unwrap();
        for xs in [p.alpha(), p.beta(), p.gamma()] {
            prop_assert!(xs.windows(2).all(|w| w[0] >= w[1]));
        }
        prop_assert!(p.trace().abs() < 1e-9);
    }

    #[test]
    fn rotation_permutes_spectra(n in 1usize..=6, seed in any::<u64>()) {
        let t = random_triple(n, seed);
        prop_assert_eq!(spectrum_point(&t.rotated()).unwrap(), spectrum_point(&t).unwrap().rotated());
    }
}

#[test]
fn batches_are_reproducible() {
    assert_eq!(sample_points(4, 10, 99), sample_points(4, 10, 99));
    assert_ne!(sample_points(4, 10, 99), sample_points(4, 10, 98));
}

#[test]
fn batch_report_passes() {
    for n in 2..=5 {
        let report = verify_sample_batch(n, 100, 5, &HornSystem::full(n));
        assert!(report.passed(), "n={n}: {report:?}");
    }
}
