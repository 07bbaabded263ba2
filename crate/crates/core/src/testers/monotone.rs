use super::{distinct, TesterConfig, Verdict, Witness};
use crate::classes::Poset;
use crate::domain::{sample, FiniteDistribution, Labelling};
use crate::error::{Error, Result};
use crate::rational::Q;

/// `ceil(10 sqrt(|P|) / eps)`.
pub fn monotone_sample_size(poset_size: usize, epsilon: f64) -> usize {
    (10.0 * (poset_size as f64).sqrt() / epsilon).ceil() as usize
}

/// Two copies `X = 0..n` and `Y = n..2n` of `P`, with `x < n + y` exactly
/// when `x < y` in `P`. Each copy carries half of every density and a copy of
/// `f`.
pub fn bipartite_reduce(
    poset: &Poset,
    dist: &FiniteDistribution,
    f: &Labelling,
) -> Result<(Poset, FiniteDistribution, Labelling)> {
    let n = poset.len();
    if dist.len() != n || f.len() != n {
        return Err(Error::DomainMismatch(format!(
            "poset of {n} elements with a distribution on {} and a labelling of {}",
            dist.len(),
            f.len()
        )));
    }
    let edges: Vec<(usize, usize)> = poset.relations().collect();
    let bipartite = Poset::bipartite(n, n, &edges)?;
    let half = Q::new(1.into(), 2.into());
    let mut weights: Vec<Q> = dist.weights().iter().map(|w| w * &half).collect();
    weights.extend_from_within(..);
    let mut bits = f.bits().to_vec();
    bits.extend_from_within(..);
    Ok((bipartite, FiniteDistribution::new(weights)?, Labelling::new(bits)))
}

/// Samples from the bipartite reduction and rejects iff some sampled
/// `x` in `X` and `y` in `Y` with `x < y` have `f(x) = 1`, `f(y) = 0`. The
/// witness is reported in the elements of `P`.
pub fn monotone_test(
    poset: &Poset,
    dist: &FiniteDistribution,
    f: &Labelling,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    let n = poset.len();
    let (bipartite, q, g) = bipartite_reduce(poset, dist, f)?;
    let m = cfg.size_or(monotone_sample_size(n, cfg.epsilon));
    let seen = distinct(&sample(&q, m, cfg.seed));
    let ones: Vec<usize> = seen.iter().copied().filter(|&x| x < n && g.bits()[x]).collect();
    let zeros: Vec<usize> = seen.iter().copied().filter(|&y| y >= n && !g.bits()[y]).collect();
    for &x in &ones {
        for &y in &zeros {
            if bipartite.less(x, y) {
                return Ok(Verdict::reject(m, Witness::ViolatingPair { lower: x, upper: y - n }));
            }
        }
    }
    Ok(Verdict::accept(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Seed;

    #[test]
    fn reduction_of_a_two_chain() {
        let p = Poset::chain(2);
        let f = Labelling::parse("10").unwrap();
        let (b, q, g) = bipartite_reduce(&p, &FiniteDistribution::uniform(2), &f).unwrap();
        assert_eq!(b.relations().collect::<Vec<_>>(), vec![(0, 3)]);
        assert_eq!(g, Labelling::parse("1010").unwrap());
        assert_eq!(q, FiniteDistribution::uniform(4));
    }

    #[test]
    fn antichain_has_no_edges() {
        let p = Poset::antichain(5);
        let (b, _, _) = bipartite_reduce(&p, &FiniteDistribution::uniform(5), &Labelling::constant(5, true)).unwrap();
        assert_eq!(b.relations().count(), 0);
    }

    #[test]
    fn anti_monotone_chain_is_caught() {
        let p = Poset::chain(8);
        let f = Labelling::parse("11110000").unwrap();
        let cfg = TesterConfig::new(0.2, Seed(1)).unwrap();
        let v = monotone_test(&p, &FiniteDistribution::uniform(8), &f, &cfg).unwrap();
        assert!(!v.accept);
        match v.witness {
            Some(Witness::ViolatingPair { lower, upper }) => {
                assert!(p.less(lower, upper) && f.bits()[lower] && !f.bits()[upper]);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }
}
