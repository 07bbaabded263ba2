use proptest::prelude::*;
use rand::seq::SliceRandom;
use vctest_core::classes::FunctionClass;
use vctest_core::domain::{sample, FiniteDistribution, FiniteDomain, Seed};
use vctest_core::testers::{birthday_ssd, one_sided_vc_test};

fn blocks(labels: &[bool]) -> usize {
    (0..labels.len()).filter(|&i| labels[i] && (i == 0 || !labels[i - 1])).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // A member of the class labels every sample consistently.
    #[test]
    fn one_sided_tester_accepts_members(
        intervals in prop::collection::vec((0usize..16, 0usize..8), 0..=3),
        m in 1usize..40,
        seed in any::<u64>(),
    ) {
        let line = FiniteDomain::line(16);
        let mut member = vec![false; 16];
        for &(start, len) in &intervals {
            member[start..(start + len).min(16)].iter_mut().for_each(|b| *b = true);
        }
        let k = blocks(&member).max(1);
        let drawn = sample(&FiniteDistribution::uniform(16), m, Seed(seed));
        let points: Vec<_> = drawn.iter().map(|&i| line.points()[i].clone()).collect();
        let labels: Vec<bool> = drawn.iter().map(|&i| member[i]).collect();
        let verdict = one_sided_vc_test(&FunctionClass::IntervalUnion { k }, &points, &labels).unwrap();
        prop_assert!(verdict.accept);
    }

    #[test]
    fn birthday_outcome_ignores_sample_order(
        samples in prop::collection::vec(0usize..30, 0..80),
        d in 1usize..40,
        seed in any::<u64>(),
    ) {
        let mut shuffled = samples.clone();
        shuffled.shuffle(&mut Seed(seed).rng());
        prop_assert_eq!(birthday_ssd(&samples, d), birthday_ssd(&shuffled, d));
    }
}

#[test]
fn inconsistent_duplicates_are_rejected() {
    let line = FiniteDomain::line(4);
    let points = vec![line.points()[1].clone(), line.points()[1].clone()];
    let verdict = one_sided_vc_test(&FunctionClass::IntervalUnion { k: 5 }, &points, &[true, false]).unwrap();
    assert!(!verdict.accept);
}
