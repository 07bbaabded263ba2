//! Binomial proportion estimates.

use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A count of successes out of a number of trials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
}

impl Proportion {
    pub fn new(successes: usize, trials: usize) -> Self {
        assert!(successes <= trials, "more successes than trials");
        Self { successes, trials }
    }

    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    /// Wilson score interval at 95%.
    pub fn wilson(&self) -> (f64, f64) {
        wilson_interval(self.successes, self.trials, Z95)
    }

    pub fn wilson_low(&self) -> f64 {
        self.wilson().0
    }

    pub fn wilson_high(&self) -> f64 {
        self.wilson().1
    }
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
/// With no trials the interval is `[0, 1]`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = (centre - half).max(0.0);
    let hi = (centre + half).min(1.0);
    // Guard the endpoints against rounding so the interval always holds p.
    (lo.min(p), hi.max(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // 8 of 10 at 95%: (0.4902, 0.9433) from the closed form.
        let (lo, hi) = wilson_interval(8, 10, Z95);
        assert!((lo - 0.4902).abs() < 1e-4, "{lo}");
        assert!((hi - 0.9433).abs() < 1e-4, "{hi}");
        let (lo, hi) = wilson_interval(0, 20, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.15 && hi < 0.17);
        assert_eq!(wilson_interval(5, 5, Z95).1, 1.0);
    }

    #[test]
    fn empty_is_uninformative() {
        assert_eq!(Proportion::new(0, 0).wilson(), (0.0, 1.0));
    }
}
