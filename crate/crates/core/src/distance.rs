//! Distance from a labelling to a class under a finite distribution.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::classes::{ConsistencyOracle, FunctionClass, Poset};
use crate::dimension::{vc_dim, MAX_ENUMERATED_POINTS};
use crate::domain::{FiniteDistribution, FiniteDomain, Labelling, Point, Seed};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FarnessReport {
    pub class: String,
    pub domain_size: usize,
    pub vc: usize,
    pub epsilon: String,
    pub trials: usize,
    pub far: usize,
    pub far_fraction: f64,
}

fn check_shapes(f: &Labelling, domain: &FiniteDomain, dist: &FiniteDistribution) -> Result<()> {
    if f.len() != domain.len() || dist.len() != domain.len() {
        return Err(Error::DomainMismatch(format!(
            "labelling has {} points, distribution {}, domain {}",
            f.len(),
            dist.len(),
            domain.len()
        )));
    }
    Ok(())
}

/// `min_h dist_D(f, h)` over members `h` of the class.
///
/// Interval unions and alternating functions on the line use a dynamic
/// program over the sorted support, monotone functions a minimum cut; every
/// other class enumerates labellings of the support with branch-and-bound.
pub fn exact_distance(
    f: &Labelling,
    class: &FunctionClass,
    domain: &FiniteDomain,
    dist: &FiniteDistribution,
) -> Result<Q> {
    match class {
        FunctionClass::IntervalUnion { k } => line_distance(f, domain, dist, LineBudget::Blocks(*k)),
        FunctionClass::Alternating { m } => line_distance(f, domain, dist, LineBudget::Alternations(*m)),
        FunctionClass::Monotone { poset } => monotone_distance(f, poset, domain, dist),
        _ => exact_distance_enumerated(f, class, domain, dist),
    }
}

/// The generic path: depth-first over labellings of the support, pruning
/// inconsistent prefixes and prefixes already costlier than the best found.
pub fn exact_distance_enumerated<C: ConsistencyOracle + ?Sized>(
    f: &Labelling,
    class: &C,
    domain: &FiniteDomain,
    dist: &FiniteDistribution,
) -> Result<Q> {
    check_shapes(f, domain, dist)?;
    let support = dist.support();
    if support.len() > MAX_ENUMERATED_POINTS {
        return Err(Error::budget(
            "distance enumeration",
            support.len() as u128,
            MAX_ENUMERATED_POINTS as u128,
        ));
    }
    let points = domain.subset(&support);
    let target: Vec<bool> = support.iter().map(|&i| f.bits()[i]).collect();
    let weights: Vec<Q> = support.iter().map(|&i| dist.weight(i).clone()).collect();
    let mut search = Search {
        class,
        points: &points,
        target: &target,
        weights: &weights,
        labels: Vec::with_capacity(points.len()),
        best: None,
    };
    search.run(Q::zero())?;
    search
        .best
        .ok_or_else(|| Error::Precondition(format!("{} realizes no labelling", class.describe())))
}

struct Search<'a, C: ?Sized> {
    class: &'a C,
    points: &'a [Point],
    target: &'a [bool],
    weights: &'a [Q],
    labels: Vec<bool>,
    best: Option<Q>,
}

impl<C: ConsistencyOracle + ?Sized> Search<'_, C> {
    fn run(&mut self, cost: Q) -> Result<()> {
        if self.best.as_ref().is_some_and(|b| cost >= *b) {
            return Ok(());
        }
        let depth = self.labels.len();
        if depth == self.points.len() {
            self.best = Some(cost);
            return Ok(());
        }
        // Agreeing with f first finds cheap members early.
        for b in [self.target[depth], !self.target[depth]] {
            self.labels.push(b);
            if self.class.consistent(&self.points[..=depth], &self.labels)? {
                let step = if b == self.target[depth] {
                    cost.clone()
                } else {
                    &cost + &self.weights[depth]
                };
                self.run(step)?;
            }
            self.labels.pop();
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum LineBudget {
    Blocks(usize),
    Alternations(usize),
}

/// Dynamic program over the support sorted along the line. State: number of
/// one-blocks (or alternations) used and the current value.
fn line_distance(
    f: &Labelling,
    domain: &FiniteDomain,
    dist: &FiniteDistribution,
    budget: LineBudget,
) -> Result<Q> {
    check_shapes(f, domain, dist)?;
    let mut keyed = Vec::new();
    for i in dist.support() {
        match &domain.points()[i] {
            Point::Real(v) if v.len() == 1 => keyed.push((v[0].clone(), i)),
            other => {
                return Err(Error::DomainMismatch(format!("expected a point of R^1, got {other}")))
            }
        }
    }
    keyed.sort();
    let cap = match budget {
        LineBudget::Blocks(k) | LineBudget::Alternations(k) => k,
    };
    // cost[used][value]; None marks unreachable states.
    let mut cost: Vec<[Option<Q>; 2]> = vec![[None, None]; cap + 1];
    for (pos, (_, i)) in keyed.iter().enumerate() {
        let w = dist.weight(*i);
        let want = f.bits()[*i];
        let mut next: Vec<[Option<Q>; 2]> = vec![[None, None]; cap + 1];
        for value in [false, true] {
            let here = if value == want { Q::zero() } else { w.clone() };
            if pos == 0 {
                let used = match (budget, value) {
                    (LineBudget::Blocks(_), true) => 1,
                    _ => 0,
                };
                if used <= cap {
                    next[used][value as usize] = Some(here);
                }
                continue;
            }
            for used in 0..=cap {
                for prev in [false, true] {
                    let Some(c) = &cost[used][prev as usize] else {
                        continue;
                    };
                    let extra = match budget {
                        LineBudget::Blocks(_) => usize::from(value && !prev),
                        LineBudget::Alternations(_) => usize::from(value != prev),
                    };
                    let u = used + extra;
                    if u > cap {
                        continue;
                    }
                    let total = c + &here;
                    let slot = &mut next[u][value as usize];
                    if slot.as_ref().is_none_or(|s| total < *s) {
                        *slot = Some(total);
                    }
                }
            }
        }
        cost = next;
    }
    if keyed.is_empty() {
        return Ok(Q::zero());
    }
    Ok(cost
        .into_iter()
        .flatten()
        .flatten()
        .min()
        .expect("the constant-zero function is always reachable"))
}

/// Fraction of uniformly random labellings of `t` at distance more than
/// `epsilon` from the class under the uniform distribution on `t`.
pub fn random_far_fraction(
    class: &FunctionClass,
    t: &FiniteDomain,
    epsilon: &Q,
    trials: usize,
    seed: Seed,
) -> Result<FarnessReport> {
    let uniform = FiniteDistribution::uniform(t.len());
    let mut far = 0;
    for trial in 0..trials {
        let mut rng = seed.derive(trial as u64).rng();
        let f = Labelling::new((0..t.len()).map(|_| rng.random_bool(0.5)).collect());
        if exact_distance(&f, class, t, &uniform)? > *epsilon {
            far += 1;
        }
    }
    Ok(FarnessReport {
        class: class.to_string(),
        domain_size: t.len(),
        vc: vc_dim(class, t)?,
        epsilon: crate::rational::format_rational(epsilon),
        trials,
        far,
        far_fraction: if trials == 0 { 0.0 } else { far as f64 / trials as f64 },
    })
}

/// Distance to monotone: the minimum weight vertex cover of the graph of
/// violated pairs (`x < y`, `f(x) = 1`, `f(y) = 0`), found as a minimum
/// source-sink cut with Edmonds-Karp.
fn monotone_distance(f: &Labelling, poset: &Poset, domain: &FiniteDomain, dist: &FiniteDistribution) -> Result<Q> {
    check_shapes(f, domain, dist)?;
    let support = dist.support();
    let mut elems = Vec::with_capacity(support.len());
    for &i in &support {
        match domain.points()[i].as_index() {
            Some(e) if e < poset.len() => elems.push(e),
            _ => {
                return Err(Error::DomainMismatch(format!(
                    "expected an element of a {}-element poset, got {}",
                    poset.len(),
                    domain.points()[i]
                )))
            }
        }
    }
    // Nodes: 0 source, 1 sink, 2 + k for the k-th support point.
    // `None` is an unbounded capacity.
    let n = support.len() + 2;
    let mut cap: Vec<Vec<Option<Q>>> = vec![vec![Some(Q::zero()); n]; n];
    for (a, &i) in support.iter().enumerate() {
        if f.bits()[i] {
            cap[0][a + 2] = Some(dist.weight(i).clone());
            for (b, &j) in support.iter().enumerate() {
                if !f.bits()[j] && poset.less(elems[a], elems[b]) {
                    cap[a + 2][b + 2] = None;
                }
            }
        } else {
            cap[a + 2][1] = Some(dist.weight(i).clone());
        }
    }
    let positive = |c: &Option<Q>| c.as_ref().is_none_or(|v| !v.is_zero());
    let mut flow = Q::zero();
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && positive(&cap[u][v]) {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[1] == usize::MAX {
            return Ok(flow);
        }
        let mut path = Vec::new();
        let mut v = 1;
        while v != 0 {
            path.push((prev[v], v));
            v = prev[v];
        }
        // Every augmenting path leaves the source on a bounded edge.
        let delta = path
            .iter()
            .filter_map(|&(u, v)| cap[u][v].clone())
            .min()
            .expect("source edges are bounded");
        for (u, v) in path {
            if let Some(c) = cap[u][v].as_mut() {
                *c -= &delta;
            }
            if let Some(c) = cap[v][u].as_mut() {
                *c += &delta;
            }
        }
        flow += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;

    #[test]
    fn examples() {
        let s = FiniteDomain::indices(5);
        let c = FunctionClass::SymmetricThreshold { n: 5, t: 1 };
        let d = exact_distance(&Labelling::constant(5, true), &c, &s, &FiniteDistribution::uniform(5));
        assert_eq!(d.unwrap(), q_ratio(4, 5));

        let line = FiniteDomain::line(4);
        let f = Labelling::parse("1010").unwrap();
        let u = FiniteDistribution::uniform(4);
        let c = FunctionClass::IntervalUnion { k: 1 };
        assert_eq!(exact_distance(&f, &c, &line, &u).unwrap(), q_ratio(1, 4));
        assert_eq!(exact_distance_enumerated(&f, &c, &line, &u).unwrap(), q_ratio(1, 4));
    }

    #[test]
    fn members_are_at_distance_zero() {
        let line = FiniteDomain::line(6);
        let f = Labelling::parse("011000").unwrap();
        let c = FunctionClass::IntervalUnion { k: 1 };
        assert!(exact_distance(&f, &c, &line, &FiniteDistribution::uniform(6)).unwrap().is_zero());
    }

    #[test]
    fn alternation_dp_matches_enumeration() {
        let line = FiniteDomain::line(7);
        let u = FiniteDistribution::uniform(7);
        let c = FunctionClass::Alternating { m: 2 };
        for mask in 0..128u64 {
            let f = Labelling::from_mask(mask, 7);
            assert_eq!(
                exact_distance(&f, &c, &line, &u).unwrap(),
                exact_distance_enumerated(&f, &c, &line, &u).unwrap()
            );
        }
    }

    #[test]
    fn monotone_cut_matches_enumeration() {
        let poset = Poset::from_pairs(6, &[(0, 2), (1, 2), (2, 4), (3, 4), (1, 5)]).unwrap();
        let c = FunctionClass::monotone(poset);
        let s = FiniteDomain::poset_elements(6);
        let w = crate::domain::normalize(&[1, 3, 2, 5, 1, 4].map(crate::rational::q)).unwrap();
        for mask in 0..64u64 {
            let f = Labelling::from_mask(mask, 6);
            assert_eq!(
                exact_distance(&f, &c, &s, &w).unwrap(),
                exact_distance_enumerated(&f, &c, &s, &w).unwrap()
            );
        }
    }

    #[test]
    fn single_point_is_never_far() {
        let c = FunctionClass::IntervalUnion { k: 1 };
        let r = random_far_fraction(&c, &FiniteDomain::line(1), &q_ratio(1, 2), 50, Seed(1)).unwrap();
        assert_eq!(r.far, 0);
    }
}
