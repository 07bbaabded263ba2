//! Support-size distinction instances turned into testing instances.
//!
//! The points of `S` are identified with `[n]` by their order in the domain,
//! so a distribution over `[n]` is directly a distribution over `S`.

use rand::seq::index;
use rand::Rng;

use super::cube::images_independent;
use super::geometry::Side;
use crate::classes::{bits_to_signs, ConsistencyOracle};
use crate::dimension::lvc_at_least;
use crate::domain::{FiniteDistribution, FiniteDomain, Labelling, Point, Seed};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use num_integer::Integer;
use num_traits::{One, Signed};

/// Parameters of a support-size distinction problem on `[n]`: supports of
/// size at most `alpha n` against at least `beta n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SsdParams {
    pub n: usize,
    pub alpha: Q,
    pub beta: Q,
    pub delta: Q,
    pub multiplier: usize,
}

impl SsdParams {
    pub fn new(n: usize, alpha: Q, beta: Q, delta: Q, multiplier: usize) -> Result<Self> {
        let half = Q::new(1.into(), 2.into());
        if !(alpha.is_positive() && alpha < beta && beta <= Q::one()) {
            return Err(Error::InvalidInput(format!("need 0 < alpha < beta <= 1, got {alpha}, {beta}")));
        }
        if !(delta.is_positive() && delta < half) {
            return Err(Error::InvalidInput(format!("need 0 < delta < 1/2, got {delta}")));
        }
        if multiplier == 0 || n == 0 {
            return Err(Error::InvalidInput("n and the multiplier must be positive".into()));
        }
        Ok(Self {
            n,
            alpha,
            beta,
            delta,
            multiplier,
        })
    }

    /// `alpha n = lvc` and `beta n = multiplier * vc`, after checking
    /// `multiplier * vc <= (1 - delta) n`.
    pub fn from_dimensions(n: usize, lvc: usize, vc: usize, delta: Q, multiplier: usize) -> Result<Self> {
        let big = multiplier * vc;
        if Q::from_integer(big.into()) > (Q::one() - &delta) * q(n as i64) {
            return Err(Error::Precondition(format!(
                "{multiplier} * vc = {big} exceeds (1 - delta) n for n = {n}"
            )));
        }
        let nq = q(n as i64);
        Self::new(n, q(lvc as i64) / &nq, q(big as i64) / &nq, delta, multiplier)
    }

    pub fn yes_support(&self) -> usize {
        floor_usize(&(&self.alpha * q(self.n as i64)))
    }

    pub fn no_support(&self) -> usize {
        let x = &self.beta * q(self.n as i64);
        let f = floor_usize(&x);
        if x.is_integer() {
            f
        } else {
            f + 1
        }
    }

    pub fn support_size(&self, side: Side) -> usize {
        match side {
            Side::Yes => self.yes_support(),
            Side::No => self.no_support(),
        }
    }
}

fn floor_usize(x: &Q) -> usize {
    let (quot, _) = x.numer().div_mod_floor(x.denom());
    usize::try_from(quot).unwrap_or(0)
}

/// A distribution over `S` with a uniformly random labelling of `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct SsdInstance {
    pub side: Side,
    pub support: Vec<usize>,
    pub distribution: FiniteDistribution,
    pub labelling: Labelling,
    pub seed: u64,
}

fn draw(n: usize, size: usize, side: Side, seed: Seed) -> Result<SsdInstance> {
    if size == 0 {
        return Err(Error::InvalidInput("support size rounds to zero".into()));
    }
    let mut rng = seed.rng();
    let mut support = index::sample(&mut rng, n, size).into_vec();
    support.sort_unstable();
    let labelling = Labelling::new((0..n).map(|_| rng.random_bool(0.5)).collect());
    Ok(SsdInstance {
        side,
        distribution: FiniteDistribution::uniform_on(n, &support)?,
        support,
        labelling,
        seed: seed.0,
    })
}

/// Draws instances for one side after checking the soundness precondition
/// once: on the yes side every subset of the support size must be
/// shattered, which makes every drawn labelling realizable on the support.
#[derive(Clone, Debug)]
pub struct SsdSampler {
    n: usize,
    size: usize,
    side: Side,
}

impl SsdSampler {
    pub fn new<C: ConsistencyOracle + ?Sized>(
        class: &C,
        s: &FiniteDomain,
        side: Side,
        params: &SsdParams,
    ) -> Result<Self> {
        if s.len() != params.n {
            return Err(Error::DomainMismatch(format!("|S| = {} but n = {}", s.len(), params.n)));
        }
        let size = params.support_size(side);
        if size == 0 {
            return Err(Error::InvalidInput("support size rounds to zero".into()));
        }
        if side == Side::Yes {
            if let Some(cert) = lvc_at_least(class, s, size)? {
                return Err(Error::Precondition(format!(
                    "subset {:?} is not shattered (labelling {} is missing), so LVC < {size}",
                    cert.subset, cert.labelling
                )));
            }
        }
        Ok(Self { n: params.n, size, side })
    }

    pub fn draw(&self, seed: Seed) -> Result<SsdInstance> {
        draw(self.n, self.size, self.side, seed)
    }
}

/// Uniform distribution over a uniformly random subset of `S` of size
/// `floor(alpha n)` (yes) or `ceil(beta n)` (no), with a random labelling.
pub fn ssd_instance<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
    side: Side,
    params: &SsdParams,
    seed: Seed,
) -> Result<SsdInstance> {
    SsdSampler::new(class, s, side, params)?.draw(seed)
}

/// The randomized-`S` variant on the hypercube: `S` is `n` distinct random
/// points of `{0,1}^bits`, and the yes side's soundness rests on the degree-`k`
/// monomial images of the support being independent, which is recorded
/// rather than assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct CubeSsdInstance {
    pub domain: FiniteDomain,
    pub instance: SsdInstance,
    pub support_independent: bool,
}

pub fn cube_ssd_instance(bits: usize, k: usize, side: Side, params: &SsdParams, seed: Seed) -> Result<CubeSsdInstance> {
    if (bits as u32) < usize::BITS && params.n > 1usize << bits {
        return Err(Error::InvalidInput(format!("{} distinct points do not fit in {{0,1}}^{bits}", params.n)));
    }
    let mut rng = seed.derive(0).rng();
    let mut seen = std::collections::HashSet::new();
    let mut points = Vec::with_capacity(params.n);
    while points.len() < params.n {
        let x: Vec<bool> = (0..bits).map(|_| rng.random_bool(0.5)).collect();
        if seen.insert(x.clone()) {
            points.push(Point::Cube(x));
        }
    }
    let domain = FiniteDomain::new(points)?;
    let instance = draw(params.n, params.support_size(side), side, seed.derive(1))?;
    let signs: Vec<Vec<i8>> = instance
        .support
        .iter()
        .map(|&i| bits_to_signs(domain.points()[i].as_cube().expect("cube point")))
        .collect();
    Ok(CubeSsdInstance {
        support_independent: images_independent(&signs, k),
        domain,
        instance,
    })
}
