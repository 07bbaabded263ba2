//! Linear-feasibility instances built from labelled moment-curve points.

use rand::seq::index;
use rand::Rng;

use super::cube::general_position_set;
use super::geometry::Side;
use crate::classes::margin_system;
use crate::domain::{FiniteDistribution, FiniteDomain, Labelling, Seed};
use crate::error::{Error, Result};
use crate::feasibility::LinearSystem;
use crate::rational::Q;

/// Labelled points with integral multiplicities and the matching margin
/// system `s_i (w0 + w . x_i) >= 1`, one constraint per support point.
#[derive(Clone, Debug, PartialEq)]
pub struct LpInstance {
    pub side: Side,
    pub n: usize,
    pub points: FiniteDomain,
    pub labelling: Labelling,
    /// Copies of each point; they sum to the number of points.
    pub multiplicities: Vec<usize>,
    pub support: Vec<usize>,
    pub system: LinearSystem<Q>,
    /// Weight of each constraint of `system`, proportional to multiplicity.
    pub constraint_weights: FiniteDistribution,
}

/// Number of points used for dimension `n`: `5 (n + 1)`.
pub fn lp_domain_size(n: usize) -> usize {
    5 * (n + 1)
}

/// Default support sizes: `n + 1` (always separable) and `ceil(4N/5)`.
pub fn lp_default_support(n: usize, side: Side) -> usize {
    match side {
        Side::Yes => n + 1,
        Side::No => (4 * lp_domain_size(n)).div_ceil(5),
    }
}

/// Random labels on a random support of the moment-curve set, with the
/// `N = 5(n+1)` copies spread as evenly as possible over the support.
pub fn lp_hard_instance(n: usize, side: Side, support_size: usize, seed: Seed) -> Result<LpInstance> {
    let total = lp_domain_size(n);
    let points = general_position_set(n, total)?;
    if support_size == 0 || support_size > total {
        return Err(Error::InvalidInput(format!("support size must lie in 1..={total}")));
    }
    if side == Side::Yes && support_size > n + 1 {
        return Err(Error::Precondition(format!(
            "a yes instance needs at most n + 1 = {} support points",
            n + 1
        )));
    }
    let mut rng = seed.rng();
    let mut support = index::sample(&mut rng, total, support_size).into_vec();
    support.sort_unstable();
    let labelling = Labelling::new((0..total).map(|_| rng.random_bool(0.5)).collect());
    let mut multiplicities = vec![0usize; total];
    for &i in &support {
        multiplicities[i] = total / support_size;
    }
    for j in index::sample(&mut rng, support_size, total % support_size) {
        multiplicities[support[j]] += 1;
    }
    let reals: Vec<Vec<Q>> = support
        .iter()
        .map(|&i| points.points()[i].as_real().expect("real point").to_vec())
        .collect();
    let labels: Vec<bool> = support.iter().map(|&i| labelling.bits()[i]).collect();
    let system = margin_system(&reals, &labels);
    let weights: Vec<Q> = support
        .iter()
        .map(|&i| Q::new(multiplicities[i].into(), total.into()))
        .collect();
    Ok(LpInstance {
        side,
        n,
        constraint_weights: FiniteDistribution::new(weights)?,
        points,
        labelling,
        multiplicities,
        support,
        system,
    })
}

impl LpInstance {
    /// The point distribution with density `multiplicity / N`.
    pub fn distribution(&self) -> FiniteDistribution {
        let total = self.multiplicities.len();
        FiniteDistribution::new(
            self.multiplicities
                .iter()
                .map(|&m| Q::new(m.into(), total.into()))
                .collect(),
        )
        .expect("multiplicities sum to N")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_sum_to_domain_size() {
        for side in [Side::Yes, Side::No] {
            for seed in 0..10 {
                let inst = lp_hard_instance(6, side, lp_default_support(6, side), Seed(seed)).unwrap();
                assert_eq!(inst.multiplicities.iter().sum::<usize>(), 35);
                assert!(inst.support.iter().all(|&i| inst.multiplicities[i] >= 1));
                assert_eq!(inst.system.constraints.len(), inst.support.len());
            }
        }
    }

    #[test]
    fn yes_side_is_feasible() {
        for seed in 0..10 {
            let inst = lp_hard_instance(4, Side::Yes, 5, Seed(seed)).unwrap();
            assert!(inst.system.is_feasible());
        }
        assert!(lp_hard_instance(4, Side::Yes, 6, Seed(0)).is_err());
    }
}
