//! Sample-based testers.
//!
//! One-sided testers (consistency, junta, monotone, LP, cluster) accept every
//! member and reject only with a [`Witness`]. The symmetric tester and the
//! birthday distinguisher are two-sided and report the statistic they
//! thresholded.

mod birthday;
mod cluster;
mod junta;
mod lp;
mod monotone;
mod one_sided;
mod symmetric;

use serde::Serialize;

use crate::domain::Seed;
use crate::error::{Error, Result};

pub use birthday::{birthday_sample_size, birthday_ssd, birthday_threshold, BirthdayOutcome, SupportSize};
pub use cluster::{cluster_cover_check, cluster_cover_witness, cluster_sample_size, cluster_test, PARTITION_BUDGET};
pub use junta::{junta_run, junta_sample_sizes, junta_test};
pub use lp::{lp_feasibility_test, lp_sample_size};
pub use monotone::{bipartite_reduce, monotone_sample_size, monotone_test};
pub use one_sided::{one_sided_sample_size, one_sided_vc_run, one_sided_vc_test};
pub use symmetric::{symmetric_sample_size, symmetric_test, symmetric_threshold_test};

/// Evidence attached to a rejection.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Sample points no member of the class labels correctly; no proper
    /// subset has that property.
    Inconsistent { points: Vec<usize> },
    /// For each candidate coordinate set, two samples agreeing on it with
    /// different labels.
    JuntaConflicts { conflicts: Vec<JuntaConflict> },
    /// `lower < upper` in the poset with `f(lower) = 1`, `f(upper) = 0`.
    ViolatingPair { lower: usize, upper: usize },
    /// Sampled constraints that are jointly infeasible, irreducibly so.
    InfeasibleSubsystem { constraints: Vec<usize> },
    /// Sample points that no admissible union of unit balls covers.
    Uncovered { points: Vec<usize> },
    /// A two-sided test statistic above its cutoff.
    Statistic { value: f64, threshold: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JuntaConflict {
    pub coordinates: Vec<usize>,
    pub pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub accept: bool,
    pub samples_used: usize,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn accept(samples_used: usize) -> Self {
        Self {
            accept: true,
            samples_used,
            witness: None,
        }
    }

    pub fn reject(samples_used: usize, witness: Witness) -> Self {
        Self {
            accept: false,
            samples_used,
            witness: Some(witness),
        }
    }
}

/// Proximity parameter, optional sample-size overrides, and the seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TesterConfig {
    pub epsilon: f64,
    pub sample_size: Option<usize>,
    pub repetitions: Option<usize>,
    pub seed: Seed,
}

impl TesterConfig {
    pub fn new(epsilon: f64, seed: Seed) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        Ok(Self {
            epsilon,
            sample_size: None,
            repetitions: None,
            seed,
        })
    }

    pub fn with_sample_size(mut self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("sample size override must be at least 1".into()));
        }
        self.sample_size = Some(m);
        Ok(self)
    }

    pub fn with_repetitions(mut self, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidInput("repetition override must be at least 1".into()));
        }
        self.repetitions = Some(s);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: Seed) -> Self {
        self.seed = seed;
        self
    }

    fn size_or(&self, default: usize) -> usize {
        self.sample_size.unwrap_or(default)
    }
}

/// Removes members of `keep` while `still_fails` holds on the rest, leaving
/// a subset on which the failure is irreducible. `still_fails` must be
/// monotone (a failing set stays failing when members are added). Blocks are
/// dropped first, halving the block size down to single members.
pub(crate) fn shrink_failure<F>(mut keep: Vec<usize>, mut still_fails: F) -> Result<Vec<usize>>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    let mut block = keep.len() / 2;
    while block >= 1 {
        let mut i = 0;
        while i < keep.len() {
            let end = (i + block).min(keep.len());
            let trial: Vec<usize> = keep[..i].iter().chain(&keep[end..]).copied().collect();
            if still_fails(&trial)? {
                keep = trial;
            } else {
                i = end;
            }
        }
        block /= 2;
    }
    Ok(keep)
}

/// Sorted distinct values of `xs`.
pub(crate) fn distinct(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
