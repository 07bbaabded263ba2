use num_traits::{One, Zero};
use proptest::prelude::*;
use vctest_core::domain::{dist_between, normalize, sample, FiniteDistribution, Labelling, Seed};
use vctest_core::rational::{q, Q};

fn weights(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..20, n).prop_filter("some weight positive", |w| w.iter().any(|&x| x > 0))
}

fn to_dist(raw: &[u32]) -> FiniteDistribution {
    let qs: Vec<Q> = raw.iter().map(|&w| q(w as i64)).collect();
    normalize(&qs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_a_pseudometric(raw in weights(8), a in 0u64..256, b in 0u64..256, c in 0u64..256) {
        let dist = to_dist(&raw);
        let (f, g, h) = (Labelling::from_mask(a, 8), Labelling::from_mask(b, 8), Labelling::from_mask(c, 8));
        let fg = dist_between(&f, &g, &dist).unwrap();
        prop_assert!(dist_between(&f, &f, &dist).unwrap().is_zero());
        prop_assert_eq!(&fg, &dist_between(&g, &f, &dist).unwrap());
        prop_assert!(fg >= Q::zero() && fg <= Q::one());
        let fh = dist_between(&f, &h, &dist).unwrap();
        let hg = dist_between(&h, &g, &dist).unwrap();
        prop_assert!(fg <= fh + hg);
    }

    #[test]
    fn complement_distance_is_one(raw in weights(6), a in 0u64..64) {
        let dist = to_dist(&raw);
        let f = Labelling::from_mask(a, 6);
        prop_assert!(dist_between(&f, &f.complement(), &dist).unwrap().is_one());
    }

    #[test]
    fn normalize_sums_to_one_and_keeps_ratios(raw in weights(7)) {
        let dist = to_dist(&raw);
        let total: Q = dist.weights().iter().sum();
        prop_assert!(total.is_one());
        let sum: u32 = raw.iter().sum();
        for (w, &r) in dist.weights().iter().zip(&raw) {
            prop_assert_eq!(w, &Q::new((r as i64).into(), (sum as i64).into()));
        }
    }

    #[test]
    fn samples_are_reproducible_and_stay_on_the_support(raw in weights(9), seed in any::<u64>()) {
        let dist = to_dist(&raw);
        let a = sample(&dist, 200, Seed(seed));
        prop_assert_eq!(&a, &sample(&dist, 200, Seed(seed)));
        prop_assert!(a.iter().all(|&i| raw[i] > 0));
    }
}

#[test]
fn normalize_rejects_bad_weights() {
    assert!(normalize(&[q(0), q(0)]).is_err());
    assert!(normalize(&[q(1), q(-1), q(2)]).is_err());
}

#[test]
fn distinct_seeds_give_distinct_samples() {
    let dist = FiniteDistribution::uniform(50);
    assert_ne!(sample(&dist, 100, Seed(1)), sample(&dist, 100, Seed(2)));
    assert_ne!(Seed(1).derive(0), Seed(1).derive(1));
}

// Pearson chi-square against the sampling weights. 23.21 is the 0.99
// quantile of chi-square with 9 degrees of freedom.
#[test]
fn sample_frequencies_fit_the_weights() {
    let raw: Vec<Q> = (1..=10).map(q).collect();
    let dist = normalize(&raw).unwrap();
    let m = 55_000;
    let mut counts = [0f64; 10];
    for i in sample(&dist, m, Seed(2024)) {
        counts[i] += 1.0;
    }
    let stat: f64 = dist
        .weights_f64()
        .iter()
        .zip(&counts)
        .map(|(p, &c)| {
            let e = p * m as f64;
            (c - e) * (c - e) / e
        })
        .sum();
    assert!(stat < 23.21, "chi-square statistic {stat}");
}
