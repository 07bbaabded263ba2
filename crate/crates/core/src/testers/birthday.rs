use std::collections::HashMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportSize {
    Small,
    Large,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BirthdayOutcome {
    pub decision: SupportSize,
    pub collisions: u64,
    pub threshold: f64,
}

/// `ceil(8 sqrt(d))`.
pub fn birthday_sample_size(d: usize) -> usize {
    (8.0 * (d as f64).sqrt()).ceil() as usize
}

/// Midpoint of the expected colliding-pair counts `C(m,2)/d` and
/// `C(m,2)/(3d)` for uniform supports of size `d` and `3d`.
pub fn birthday_threshold(m: usize, d: usize) -> f64 {
    let pairs = (m * m.saturating_sub(1)) as f64 / 2.0;
    pairs * 2.0 / (3.0 * d as f64)
}

/// Distinguishes a uniform support of size at most `d` from one of size at
/// least `3d` by counting colliding pairs among the samples. Depends only on
/// the multiset of samples.
pub fn birthday_ssd(samples: &[usize], d: usize) -> BirthdayOutcome {
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for &s in samples {
        *counts.entry(s).or_default() += 1;
    }
    let collisions: u64 = counts.values().map(|&c| c * (c - 1) / 2).sum();
    let threshold = birthday_threshold(samples.len(), d.max(1));
    let decision = if collisions as f64 > threshold {
        SupportSize::Small
    } else {
        SupportSize::Large
    };
    BirthdayOutcome {
        decision,
        collisions,
        threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        assert_eq!(birthday_sample_size(400), 160);
        assert_eq!(birthday_ssd(&[7; 160], 400).decision, SupportSize::Small);
        let distinct: Vec<usize> = (0..160).collect();
        assert_eq!(birthday_ssd(&distinct, 400).decision, SupportSize::Large);
    }

    #[test]
    fn permutation_invariant() {
        let a = [1, 2, 2, 3, 3, 3, 9];
        let mut b = a;
        b.reverse();
        assert_eq!(birthday_ssd(&a, 2), birthday_ssd(&b, 2));
        assert_eq!(birthday_ssd(&a, 2).collisions, 4);
    }
}
