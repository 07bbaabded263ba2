use rand::Rng;

use super::{TesterConfig, Verdict, Witness};
use crate::error::{Error, Result};

/// `ceil((50/eps^2) ln 3)`.
pub fn symmetric_sample_size(epsilon: f64) -> usize {
    (50.0 / (epsilon * epsilon) * 3f64.ln()).ceil() as usize
}

/// Tester for functions on `[n]` with at most `n/5` ones: query `m` uniform
/// points, count the ones `X`, reject iff `X > (1 + eps/2) m / 5`.
pub fn symmetric_test(n: usize, f: impl Fn(usize) -> bool, cfg: &TesterConfig) -> Result<Verdict> {
    let m = cfg.size_or(symmetric_sample_size(cfg.epsilon));
    let cutoff = (1.0 + cfg.epsilon / 2.0) * m as f64 / 5.0;
    count_and_threshold(n, f, m, cutoff, cfg)
}

/// Extension to an arbitrary threshold `t`: reject iff
/// `X > (1 + eps/2) t m / n`.
pub fn symmetric_threshold_test(
    n: usize,
    t: usize,
    f: impl Fn(usize) -> bool,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    let m = cfg.size_or(symmetric_sample_size(cfg.epsilon));
    let cutoff = (1.0 + cfg.epsilon / 2.0) * (t * m) as f64 / n as f64;
    count_and_threshold(n, f, m, cutoff, cfg)
}

fn count_and_threshold(
    n: usize,
    f: impl Fn(usize) -> bool,
    m: usize,
    cutoff: f64,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidInput("domain [n] must be nonempty".into()));
    }
    let mut rng = cfg.seed.rng();
    let ones = (0..m).filter(|_| f(rng.random_range(0..n))).count();
    if ones as f64 > cutoff {
        Ok(Verdict::reject(
            m,
            Witness::Statistic {
                value: ones as f64,
                threshold: cutoff,
            },
        ))
    } else {
        Ok(Verdict::accept(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Seed;

    #[test]
    fn sample_size_formula() {
        // 50 / 0.04 * ln 3 = 1373.27
        assert_eq!(symmetric_sample_size(0.2), 1374);
    }

    #[test]
    fn zero_function_always_accepts() {
        for s in 0..20 {
            let cfg = TesterConfig::new(0.2, Seed(s)).unwrap();
            assert!(symmetric_test(1000, |_| false, &cfg).unwrap().accept);
        }
    }

    #[test]
    fn all_ones_always_rejects() {
        let cfg = TesterConfig::new(0.2, Seed(0)).unwrap();
        assert!(!symmetric_test(1000, |_| true, &cfg).unwrap().accept);
        assert!(!symmetric_threshold_test(1000, 200, |_| true, &cfg).unwrap().accept);
    }
}
