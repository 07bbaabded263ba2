//! Points, finite domains, labellings, finite distributions and seeds.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q_from_f64, q_to_f64, Q};

/// A single domain element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    /// Exact real vector.
    Real(Vec<Q>),
    /// Hypercube vertex in `{0,1}^n`.
    Cube(Vec<bool>),
    /// Element of a poset, by index.
    Poset(usize),
    /// Abstract index `i` in `[n]`.
    Index(usize),
}

impl Point {
    pub fn real_from_ints(coords: &[i64]) -> Point {
        Point::Real(coords.iter().map(|&c| crate::rational::q(c)).collect())
    }

    /// Parses a bit string such as `0110`.
    pub fn cube_from_str(bits: &str) -> Result<Point> {
        bits.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad bit {c:?} in {bits:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Point::Cube)
    }

    pub fn kind(&self) -> DomainKind {
        match self {
            Point::Real(v) if v.len() == 1 => DomainKind::RealLine,
            Point::Real(_) => DomainKind::RealSpace,
            Point::Cube(_) => DomainKind::Cube,
            Point::Poset(_) => DomainKind::Poset,
            Point::Index(_) => DomainKind::Abstract,
        }
    }

    /// Coordinate count for vectors; `None` for indexed points.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Point::Real(v) => Some(v.len()),
            Point::Cube(v) => Some(v.len()),
            Point::Poset(_) | Point::Index(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<&[Q]> {
        match self {
            Point::Real(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_cube(&self) -> Option<&[bool]> {
        match self {
            Point::Cube(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_index(&self) -> Option<usize> {
        match self {
            Point::Poset(i) | Point::Index(i) => Some(*i),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Real(v) => {
                let parts: Vec<String> = v.iter().map(crate::rational::format_rational).collect();
                write!(f, "({})", parts.join(", "))
            }
            Point::Cube(v) => {
                for &b in v {
                    f.write_str(if b { "1" } else { "0" })?;
                }
                Ok(())
            }
            Point::Poset(i) => write!(f, "p{i}"),
            Point::Index(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    RealLine,
    RealSpace,
    Cube,
    Poset,
    Abstract,
}

impl DomainKind {
    pub fn name(self) -> &'static str {
        match self {
            DomainKind::RealLine => "real-line",
            DomainKind::RealSpace => "real-space",
            DomainKind::Cube => "cube",
            DomainKind::Poset => "poset",
            DomainKind::Abstract => "abstract",
        }
    }
}

/// Ordered set of distinct points of one kind and dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDomain {
    points: Vec<Point>,
}

impl FiniteDomain {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(first) = points.first() {
            let (kind, dim) = (first.kind(), first.dim());
            for p in &points {
                // A 1-D real point and a real vector differ only in dimension.
                if p.dim() != dim || std::mem::discriminant(p) != std::mem::discriminant(first) {
                    return Err(Error::DomainMismatch(format!(
                        "point {p} does not match domain kind {} / dim {dim:?}",
                        kind.name()
                    )));
                }
            }
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::InvalidInput(format!("duplicate point {p}")));
            }
        }
        Ok(Self { points })
    }

    /// `[n]` as abstract indices.
    pub fn indices(n: usize) -> Self {
        Self {
            points: (0..n).map(Point::Index).collect(),
        }
    }

    /// All elements of a poset of size `n`.
    pub fn poset_elements(n: usize) -> Self {
        Self {
            points: (0..n).map(Point::Poset).collect(),
        }
    }

    /// The reals `1, 2, ..., n` on the line.
    pub fn line(n: usize) -> Self {
        Self {
            points: (1..=n as i64).map(|x| Point::real_from_ints(&[x])).collect(),
        }
    }

    /// The full hypercube `{0,1}^n` in lexicographic order.
    pub fn full_cube(n: usize) -> Self {
        let points = (0..1u64 << n)
            .map(|mask| Point::Cube((0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect()))
            .collect();
        Self { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn kind(&self) -> Option<DomainKind> {
        self.points.first().map(Point::kind)
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().and_then(Point::dim)
    }

    pub fn subset(&self, idx: &[usize]) -> Vec<Point> {
        idx.iter().map(|&i| self.points[i].clone()).collect()
    }
}

/// A total 0/1 assignment, aligned with a domain's point order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Labelling(pub Vec<bool>);

impl Labelling {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn constant(n: usize, value: bool) -> Self {
        Self(vec![value; n])
    }

    /// Low `n` bits of `mask`, bit `i` giving the label of point `i`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn parse(bits: &str) -> Result<Self> {
        bits.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("bad label {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }

    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self(idx.iter().map(|&i| self.0[i]).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Exact probability weights over `n` indexed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDistribution {
    weights: Vec<Q>,
}

impl FiniteDistribution {
    /// Checks nonnegativity and that the weights sum to exactly one.
    pub fn new(weights: Vec<Q>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidInput("negative weight".into()));
        }
        let total: Q = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs a point");
        let w = Q::new(1.into(), (n as u64).into());
        Self {
            weights: vec![w; n],
        }
    }

    /// Uniform over `support` inside a domain of `n` points.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        let mut weights = vec![Q::zero(); n];
        let w = Q::new(1.into(), (support.len() as u64).into());
        for &i in support {
            if i >= n {
                return Err(Error::InvalidInput(format!("support index {i} >= {n}")));
            }
            weights[i] = w.clone();
        }
        Self::new(weights)
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        let mut weights = vec![Q::zero(); n];
        weights[at] = Q::one();
        Self { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Q {
        &self.weights[i]
    }

    /// Indices with positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i].is_positive())
            .collect()
    }

    /// Smallest positive weight.
    pub fn min_density(&self) -> Option<&Q> {
        self.weights.iter().filter(|w| w.is_positive()).min()
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(q_to_f64).collect()
    }
}

/// Divides nonnegative weights by their sum.
pub fn normalize(raw_weights: &[Q]) -> Result<FiniteDistribution> {
    if raw_weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidInput("negative weight".into()));
    }
    let total: Q = raw_weights.iter().sum();
    if total.is_zero() {
        return Err(Error::InvalidInput("all weights are zero".into()));
    }
    Ok(FiniteDistribution {
        weights: raw_weights.iter().map(|w| w / &total).collect(),
    })
}

/// Float-mode normalization; the doubles are converted exactly, so the
/// result still sums to one exactly.
pub fn normalize_f64(raw_weights: &[f64]) -> Result<FiniteDistribution> {
    let exact = raw_weights
        .iter()
        .map(|&w| q_from_f64(w))
        .collect::<Result<Vec<_>>>()?;
    normalize(&exact)
}

/// `Pr_{x ~ D}[f(x) != g(x)]`, exactly.
pub fn dist_between(f: &Labelling, g: &Labelling, dist: &FiniteDistribution) -> Result<Q> {
    if f.len() != g.len() || f.len() != dist.len() {
        return Err(Error::DomainMismatch(format!(
            "labellings of size {} and {} against a distribution on {} points",
            f.len(),
            g.len(),
            dist.len()
        )));
    }
    Ok(f.0
        .iter()
        .zip(&g.0)
        .zip(dist.weights())
        .filter(|((a, b), _)| a != b)
        .map(|(_, w)| w)
        .sum())
}

/// `m` i.i.d. point indices drawn from `dist`.
pub fn sample(dist: &FiniteDistribution, m: usize, seed: Seed) -> Vec<usize> {
    if m == 0 {
        return Vec::new();
    }
    let support = dist.support();
    if support.len() == 1 {
        return vec![support[0]; m];
    }
    let sampler = WeightedIndex::new(dist.weights_f64()).expect("weights sum to one");
    let mut rng = seed.rng();
    (0..m).map(|_| sampler.sample(&mut rng)).collect()
}

/// Root of every randomized computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Child seed for stream `index`; a pure function of `(self, index)`.
    pub fn derive(self, index: u64) -> Seed {
        let mut z = self.0 ^ splitmix(index.wrapping_add(0x632B_E59B_D9B4_E019));
        z = splitmix(z);
        Seed(z)
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_ratio};

    #[test]
    fn distance_examples() {
        let d = FiniteDistribution::uniform(4);
        let f = Labelling::parse("1010").unwrap();
        let g = Labelling::parse("1111").unwrap();
        assert_eq!(dist_between(&f, &f, &d).unwrap(), q(0));
        assert_eq!(dist_between(&f, &f.complement(), &d).unwrap(), q(1));
        assert_eq!(dist_between(&f, &g, &d).unwrap(), q_ratio(1, 2));
        assert!(matches!(
            dist_between(&f, &Labelling::parse("10").unwrap(), &d),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn normalize_examples() {
        let uniform = normalize(&[q(1), q(1), q(1), q(1)]).unwrap();
        assert_eq!(uniform, FiniteDistribution::uniform(4));
        assert_eq!(
            normalize(&[q(2), q(0), q(2)]).unwrap().weights(),
            &[q_ratio(1, 2), q(0), q_ratio(1, 2)]
        );
        assert_eq!(
            normalize(&[q(3), q(1)]).unwrap().weights(),
            &[q_ratio(3, 4), q_ratio(1, 4)]
        );
        assert!(normalize(&[q(0), q(0)]).is_err());
        let float = normalize_f64(&[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(float.weights().iter().sum::<Q>(), q(1));
    }

    #[test]
    fn sample_degenerate_cases() {
        let mass = FiniteDistribution::point_mass(3, 2);
        assert_eq!(sample(&mass, 5, Seed(1)), vec![2; 5]);
        assert!(sample(&FiniteDistribution::uniform(3), 0, Seed(1)).is_empty());
    }

    #[test]
    fn sample_is_deterministic_per_seed() {
        let d = FiniteDistribution::uniform(50);
        assert_eq!(sample(&d, 100, Seed(9)), sample(&d, 100, Seed(9)));
        assert_ne!(sample(&d, 100, Seed(9)), sample(&d, 100, Seed(10)));
    }

    #[test]
    fn uniform_frequencies_within_three_sigma() {
        let n = 1000;
        let m = 100_000;
        let counts = sample(&FiniteDistribution::uniform(n), m, Seed(2024))
            .into_iter()
            .fold(vec![0usize; n], |mut acc, i| {
                acc[i] += 1;
                acc
            });
        let p = 1.0 / n as f64;
        let mean = m as f64 * p;
        let sigma = (m as f64 * p * (1.0 - p)).sqrt();
        // With 1000 cells a handful of 3-sigma excursions are expected; the
        // multinomial check is the chi-square statistic.
        let outside = counts
            .iter()
            .filter(|&&c| (c as f64 - mean).abs() > 3.0 * sigma)
            .count();
        assert!(outside <= 10, "{outside} cells outside 3 sigma");
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - mean).powi(2) / mean).sum();
        // dof 999: mean 999, sd ~44.7
        assert!((chi2 - 999.0).abs() < 3.0 * (2.0f64 * 999.0).sqrt(), "chi2 = {chi2}");
    }

    #[test]
    fn domain_rejects_duplicates_and_mixed_kinds() {
        assert!(FiniteDomain::new(vec![Point::Index(1), Point::Index(1)]).is_err());
        assert!(FiniteDomain::new(vec![Point::Index(1), Point::Poset(2)]).is_err());
        assert!(FiniteDomain::new(vec![
            Point::real_from_ints(&[1]),
            Point::real_from_ints(&[1, 2])
        ])
        .is_err());
        assert_eq!(FiniteDomain::full_cube(3).len(), 8);
    }

    #[test]
    fn derived_seeds_differ_by_stream() {
        let s = Seed(7);
        assert_eq!(s.derive(3), s.derive(3));
        assert_ne!(s.derive(3), s.derive(4));
        assert_ne!(s.derive(0), Seed(7));
    }

    #[test]
    fn labelling_masks() {
        let l = Labelling::parse("1101").unwrap();
        assert_eq!(Labelling::from_mask(l.to_mask(), 4), l);
        assert_eq!(l.ones(), 3);
        assert_eq!(l.restrict(&[2, 3]).to_string(), "01");
    }
}
