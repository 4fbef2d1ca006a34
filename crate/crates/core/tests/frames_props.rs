use proptest::prelude::*;
use spectra_forge_core::frames::{self, exponential_determinant, ExponentialSystem};
use spectra_forge_core::measure::{AtomicMeasure, EvalPolicy, Measure};
use spectra_forge_core::rational::{int, ratio, Rational};
use spectra_forge_core::spectra::jp_scan;
use spectra_forge_core::FrequencySet;

/// Integer atoms containing 0 with positive rational weights.
fn measure() -> impl Strategy<Value = AtomicMeasure> {
    prop::collection::btree_set(1i64..20, 0..6).prop_flat_map(|rest| {
        let atoms: Vec<i64> = std::iter::once(0).chain(rest).collect();
        let n = atoms.len();
        prop::collection::vec(1i64..10, n).prop_map(move |raw| {
            let total: i64 = raw.iter().sum();
            AtomicMeasure::integer(&atoms, raw.iter().map(|&w| ratio(w, total)).collect()).unwrap()
        })
    })
}

fn freqs(max: usize) -> impl Strategy<Value = FrequencySet> {
    prop::collection::btree_set((-30i64..30, 1i64..10), 1..=max)
        .prop_map(|v| FrequencySet::new(v.into_iter().map(|(p, q)| ratio(p, q)).collect()))
        .prop_filter("distinct after reduction", |f| !f.is_empty())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ratios_lie_between_bounds(mu in measure(), f in freqs(12), seed in any::<u64>()) {
        let sys = ExponentialSystem::new(mu, f);
        let b = frames::frame_bounds(&sys);
        let r = frames::random_vector_oracle(&sys, 50, 2, 50, seed);
        prop_assert!(r.sampled_min >= b.lower - 1e-9 * b.upper.max(1.0));
        prop_assert!(r.sampled_max <= b.upper + 1e-9 * b.upper.max(1.0));
    }

    #[test]
    fn integer_translation_of_frequencies(mu in measure(), f in freqs(10), k in -5i64..5) {
        let a = frames::frame_bounds(&ExponentialSystem::new(mu.clone(), f.clone()));
        let b = frames::frame_bounds(&ExponentialSystem::new(mu, f.translated(&int(k))));
        prop_assert!(close(a.lower, b.lower) && close(a.upper, b.upper));
    }

    #[test]
    fn translation_of_atoms(mu in measure(), f in freqs(10), p in -7i64..7, q in 1i64..5) {
        let shift = ratio(p, q);
        let moved: Vec<Rational> = mu.atoms().iter().map(|a| a + &shift).collect();
        let mu2 = AtomicMeasure::new(moved, mu.weights().to_vec()).unwrap();
        let a = frames::frame_bounds(&ExponentialSystem::new(mu, f.clone()));
        let b = frames::frame_bounds(&ExponentialSystem::new(mu2, f));
        prop_assert!(close(a.lower, b.lower) && close(a.upper, b.upper));
    }

    /// For square systems the lower bound vanishes with the determinant.
    #[test]
    fn determinant_and_lower_bound_agree(mu in measure(), seed in prop::collection::vec((-30i64..30, 1i64..10), 8)) {
        let n = mu.len();
        let f = FrequencySet::new(seed.into_iter().map(|(p, q)| ratio(p, q)).collect());
        prop_assume!(f.len() >= n);
        let f = FrequencySet::new(f.into_vec().into_iter().take(n).collect());
        let det = exponential_determinant(mu.atoms(), &f).unwrap().norm();
        let lower = frames::riesz_sequence_bounds(&ExponentialSystem::new(mu, f)).lower;
        if det < 1e-10 {
            prop_assert!(lower < 1e-8, "det {det}, lower {lower}");
        }
        if lower > 1e-6 {
            prop_assert!(det > 1e-12, "det {det}, lower {lower}");
        }
    }

    /// `Q_Λ ≤ Q_Λ'` whenever `Λ ⊂ Λ'`.
    #[test]
    fn q_is_monotone_in_frequencies(mu in measure(), big in freqs(12), keep in prop::collection::vec(any::<bool>(), 12)) {
        let small = FrequencySet::new(big.iter().zip(&keep).filter(|(_, &k)| k).map(|(x, _)| x.clone()).collect());
        let grid = spectra_forge_core::spectra::uniform_grid(0.0, 1.0, 32);
        let m = Measure::Atomic(mu);
        let policy = EvalPolicy::default();
        let qs = jp_scan(&m, &small, &grid, &policy);
        let qb = jp_scan(&m, &big, &grid, &policy);
        for (a, b) in qs.points.iter().zip(&qb.points) {
            prop_assert!(a.q <= b.q + 1e-12);
        }
    }
}

#[test]
fn weighted_pair_bounds() {
    let mu = AtomicMeasure::integer(&[0, 1], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
    let b = frames::frame_bounds(&ExponentialSystem::new(
        mu,
        FrequencySet::new(vec![int(0), ratio(1, 2)]),
    ));
    assert!(close(b.lower, 2.0 / 3.0) && close(b.upper, 4.0 / 3.0));
}
