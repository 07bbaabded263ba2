use super::{distinct, shrink_failure, TesterConfig, Verdict, Witness};
use crate::domain::{sample, FiniteDistribution};
use crate::error::{Error, Result};
use crate::feasibility::LinearSystem;
use crate::rational::Q;

/// `ceil(4 dim / eps)` for a system in `dim` variables.
pub fn lp_sample_size(dim: usize, epsilon: f64) -> usize {
    (4.0 * dim as f64 / epsilon).ceil() as usize
}

/// Samples constraints according to `weights` and accepts iff the sampled
/// subsystem is feasible, decided exactly. A rejection carries an
/// irreducible infeasible subset of the sampled constraints.
pub fn lp_feasibility_test(
    system: &LinearSystem<Q>,
    weights: &FiniteDistribution,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    if weights.len() != system.constraints.len() {
        return Err(Error::DomainMismatch(format!(
            "{} constraint weights for {} constraints",
            weights.len(),
            system.constraints.len()
        )));
    }
    let m = cfg.size_or(lp_sample_size(system.dim, cfg.epsilon));
    let drawn = distinct(&sample(weights, m, cfg.seed));
    let infeasible = |idx: &[usize]| -> Result<bool> { Ok(!subsystem(system, idx).is_feasible()) };
    let sub = subsystem(system, &drawn);
    let Some(support) = sub.infeasible_subset() else {
        return Ok(Verdict::accept(m));
    };
    let start = support.into_iter().map(|i| drawn[i]).collect();
    let core = shrink_failure(start, infeasible)?;
    Ok(Verdict::reject(m, Witness::InfeasibleSubsystem { constraints: core }))
}

fn subsystem(system: &LinearSystem<Q>, idx: &[usize]) -> LinearSystem<Q> {
    let mut sub = LinearSystem::new(system.dim);
    for &i in idx {
        sub.push(system.constraints[i].clone());
    }
    sub
}
