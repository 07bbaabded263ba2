//! Function classes exposed through consistency oracles.
//!
//! An oracle answers one question: given distinct labelled points, does
//! some member of the class agree with every label? Everything in
//! [`crate::dimension`] and [`crate::distance`] is built on that question.

mod embed;
mod poset;
mod spec;
mod tree;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::domain::{Point, Seed};
use crate::error::{Error, Result};
use crate::feasibility::{Constraint, LinearSystem};
use crate::linalg;
use crate::rational::{binomial, q, q_to_f64, Q};

pub use embed::{
    bits_to_signs, monomial_embed, moment_curve_embed, moment_curve_parameter,
    multilinear_monomials, real_monomial_embed, real_monomials,
};
pub use poset::Poset;
pub use spec::{parse_arrangement, parse_class_spec, parse_class_spec_with};
pub use tree::{
    build_boolean_tree, min_tree_size_bruteforce, DecisionTree, Test, TREE_SEARCH_BUDGET,
};

/// Limit on candidate coordinate subsets scanned by the junta oracle.
pub const JUNTA_SCAN_BUDGET: u128 = 1_000_000;

/// Anything that can decide consistency of a labelled point set.
pub trait ConsistencyOracle: Sync {
    fn consistent(&self, points: &[Point], labels: &[bool]) -> Result<bool>;

    fn describe(&self) -> String;

    /// True when, on distinct points of the real line, consistency depends
    /// only on the labels read in increasing order. Shattering then depends
    /// only on the size of a set.
    fn line_order_invariant(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtfDomain {
    Real,
    Cube,
}

/// `sign(t + w . x)` on `R^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunctional {
    pub weights: Vec<Q>,
    pub offset: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionClass {
    /// Unions of at most `k` intervals on the line.
    IntervalUnion { k: usize },
    /// Functions on the line with at most `m` alternations.
    Alternating { m: usize },
    /// Halfspaces `sign(w0 + w . x)` on `R^n`.
    Halfspace { n: usize },
    /// Intersections of `k` halfspaces; only moment-curve domains.
    HalfspaceIntersection { n: usize, k: usize },
    /// Degree-`k` polynomial threshold functions on `R^n` or `{0,1}^n`.
    Ptf { n: usize, k: usize, domain: PtfDomain },
    /// Trees of at most `k` nodes `x_i < t`; only axis-colinear domains.
    RealDecisionTree { n: usize, k: usize },
    /// Trees of at most `k` nodes `x_i = 1` on `{0,1}^n`.
    BooleanDecisionTree { n: usize, k: usize },
    /// Functions of at most `k` of the `n` coordinates.
    Junta { n: usize, k: usize },
    /// Monotone functions on a poset.
    Monotone { poset: Arc<Poset> },
    /// Functions on `[n]` with at most `t` ones.
    SymmetricThreshold { n: usize, t: usize },
    /// Sign vectors of the cells of a hyperplane arrangement, as functions on
    /// the hyperplane indices.
    HyperplaneArrangement { hyperplanes: Vec<AffineFunctional> },
}

impl FunctionClass {
    /// `S_n`: at most `floor(n/5)` ones.
    pub fn symmetric_fifth(n: usize) -> Self {
        FunctionClass::SymmetricThreshold { n, t: n / 5 }
    }

    pub fn monotone(poset: Poset) -> Self {
        FunctionClass::Monotone {
            poset: Arc::new(poset),
        }
    }

    fn check_params(&self) -> Result<()> {
        let positive = match self {
            FunctionClass::IntervalUnion { k } => *k > 0,
            FunctionClass::Alternating { .. } => true,
            FunctionClass::Halfspace { n } => *n > 0,
            FunctionClass::HalfspaceIntersection { n, k } => *n > 0 && *k > 0,
            FunctionClass::Ptf { n, k, .. } => *n > 0 && *k > 0,
            FunctionClass::RealDecisionTree { n, .. } => *n > 0,
            FunctionClass::BooleanDecisionTree { n, .. } => *n > 0,
            FunctionClass::Junta { n, k } => *n > 0 && k <= n,
            FunctionClass::Monotone { .. } => true,
            FunctionClass::SymmetricThreshold { n, t } => *n > 0 && t <= n,
            FunctionClass::HyperplaneArrangement { hyperplanes } => !hyperplanes.is_empty(),
        };
        if positive {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("bad parameters for {self}")))
        }
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionClass::IntervalUnion { k } => write!(f, "intervals:k={k}"),
            FunctionClass::Alternating { m } => write!(f, "alternating:m={m}"),
            FunctionClass::Halfspace { n } => write!(f, "halfspace:n={n}"),
            FunctionClass::HalfspaceIntersection { n, k } => {
                write!(f, "halfspace-intersection:n={n},k={k}")
            }
            FunctionClass::Ptf { n, k, domain } => {
                let d = match domain {
                    PtfDomain::Real => "real",
                    PtfDomain::Cube => "cube",
                };
                write!(f, "ptf:n={n},k={k},domain={d}")
            }
            FunctionClass::RealDecisionTree { n, k } => write!(f, "real-tree:n={n},k={k}"),
            FunctionClass::BooleanDecisionTree { n, k } => write!(f, "bool-tree:n={n},k={k}"),
            FunctionClass::Junta { n, k } => write!(f, "junta:n={n},k={k}"),
            FunctionClass::Monotone { poset } => write!(f, "monotone:size={}", poset.len()),
            FunctionClass::SymmetricThreshold { n, t } => write!(f, "symmetric:n={n},t={t}"),
            FunctionClass::HyperplaneArrangement { hyperplanes } => write!(
                f,
                "arrangement:lines={},d={}",
                hyperplanes.len(),
                hyperplanes.first().map_or(0, |h| h.weights.len())
            ),
        }
    }
}

impl ConsistencyOracle for FunctionClass {
    fn consistent(&self, points: &[Point], labels: &[bool]) -> Result<bool> {
        if points.len() != labels.len() {
            return Err(Error::DomainMismatch(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        self.check_params()?;
        if points.is_empty() {
            return Ok(true);
        }
        match self {
            FunctionClass::IntervalUnion { k } => {
                let seq = line_sequence(points, labels)?;
                Ok(one_blocks(&seq) <= *k)
            }
            FunctionClass::Alternating { m } => {
                let seq = line_sequence(points, labels)?;
                Ok(alternation_count(&seq) <= *m)
            }
            FunctionClass::Halfspace { n } => {
                let reals = real_points(points, *n)?;
                Ok(linear_separability(&reals, labels))
            }
            FunctionClass::HalfspaceIntersection { n, k } => {
                let reals = real_points(points, *n)?;
                let mut keyed = Vec::with_capacity(reals.len());
                for (p, &l) in reals.iter().zip(labels) {
                    let x = moment_curve_parameter(p).ok_or_else(|| {
                        Error::DomainMismatch(
                            "halfspace intersections are only decided on moment-curve images"
                                .into(),
                        )
                    })?;
                    keyed.push((x, l));
                }
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                let seq: Vec<bool> = keyed.into_iter().map(|(_, l)| l).collect();
                let per_halfspace = if n % 2 == 0 { *n } else { n - 1 };
                Ok(alternation_count(&seq) <= per_halfspace * k)
            }
            FunctionClass::Ptf { n, k, domain } => {
                let embedded: Vec<Vec<Q>> = match domain {
                    PtfDomain::Real => real_points(points, *n)?
                        .iter()
                        .map(|p| real_monomial_embed(p, *k))
                        .collect(),
                    PtfDomain::Cube => cube_points(points, *n)?
                        .iter()
                        .map(|p| {
                            monomial_embed(&bits_to_signs(p), *k)
                                .into_iter()
                                .map(|v| q(v as i64))
                                .collect()
                        })
                        .collect(),
                };
                Ok(linear_separability(&embedded, labels))
            }
            FunctionClass::RealDecisionTree { n, k } => {
                let reals = real_points(points, *n)?;
                let axis = colinear_axis(&reals)?;
                let mut keyed: Vec<(Q, bool)> = reals
                    .iter()
                    .zip(labels)
                    .map(|(p, &l)| (p[axis].clone(), l))
                    .collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                let seq: Vec<bool> = keyed.into_iter().map(|(_, l)| l).collect();
                Ok(alternation_count(&seq) <= *k)
            }
            FunctionClass::BooleanDecisionTree { n, k } => {
                let bits = cube_points(points, *n)?;
                Ok(min_tree_size_bruteforce(&bits, labels, *k)?.is_some())
            }
            FunctionClass::Junta { n, k } => {
                let bits = cube_points(points, *n)?;
                Ok(junta_witness_free_subset(&bits, labels, *n, *k)?.is_some())
            }
            FunctionClass::Monotone { poset } => {
                let idx = indexed_points(points, poset.len(), true)?;
                for (a, &i) in idx.iter().enumerate() {
                    for (b, &j) in idx.iter().enumerate() {
                        if labels[a] && !labels[b] && poset.less(i, j) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            FunctionClass::SymmetricThreshold { n, t } => {
                indexed_points(points, *n, false)?;
                Ok(labels.iter().filter(|&&b| b).count() <= *t)
            }
            FunctionClass::HyperplaneArrangement { hyperplanes } => {
                let idx = indexed_points(points, hyperplanes.len(), false)?;
                Ok(arrangement_cell_exists(hyperplanes, &idx, labels))
            }
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }

    fn line_order_invariant(&self) -> bool {
        matches!(self, FunctionClass::IntervalUnion { .. } | FunctionClass::Alternating { .. })
    }
}

/// An explicitly listed finite class of functions on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitClass {
    pub n: usize,
    pub members: Vec<Vec<bool>>,
}

impl ExplicitClass {
    pub fn new(n: usize, members: Vec<Vec<bool>>) -> Result<Self> {
        if members.iter().any(|m| m.len() != n) {
            return Err(Error::InvalidInput("member length differs from n".into()));
        }
        Ok(Self { n, members })
    }
}

impl ConsistencyOracle for ExplicitClass {
    fn consistent(&self, points: &[Point], labels: &[bool]) -> Result<bool> {
        let idx = indexed_points(points, self.n, false)?;
        Ok(self
            .members
            .iter()
            .any(|h| idx.iter().zip(labels).all(|(&i, &l)| h[i] == l)))
    }

    fn describe(&self) -> String {
        format!("explicit:n={},members={}", self.n, self.members.len())
    }
}

/// `lines` affine hyperplanes in `R^d` in general position: any `d` normals
/// are independent and no `d + 1` hyperplanes share a point. Coefficients are
/// small random integers; candidates failing the check are redrawn.
pub fn random_arrangement(lines: usize, d: usize, seed: Seed) -> Result<FunctionClass> {
    use rand::Rng;
    if lines == 0 || d == 0 {
        return Err(Error::InvalidInput("arrangement needs lines > 0 and d > 0".into()));
    }
    let checks = binomial(lines as u64, d as u64) + binomial(lines as u64, d as u64 + 1);
    if checks > JUNTA_SCAN_BUDGET {
        return Err(Error::budget("general-position check", checks, JUNTA_SCAN_BUDGET));
    }
    let mut rng = seed.rng();
    for _ in 0..1000 {
        let hyperplanes: Vec<AffineFunctional> = (0..lines)
            .map(|_| AffineFunctional {
                weights: (0..d).map(|_| q(rng.random_range(-30..=30))).collect(),
                offset: q(rng.random_range(-30..=30)),
            })
            .collect();
        if in_general_position(&hyperplanes) {
            return Ok(FunctionClass::HyperplaneArrangement { hyperplanes });
        }
    }
    Err(Error::Precondition("no general-position arrangement found in 1000 draws".into()))
}

fn in_general_position(hyperplanes: &[AffineFunctional]) -> bool {
    let d = hyperplanes[0].weights.len();
    let n = hyperplanes.len();
    let mut ok = true;
    for_each_subset(n, d.min(n), |s| {
        let rows: Vec<Vec<Q>> = s.iter().map(|&i| hyperplanes[i].weights.clone()).collect();
        ok = linalg::rank(&rows) == s.len();
        ok
    });
    if ok && n > d {
        for_each_subset(n, d + 1, |s| {
            let rows: Vec<Vec<Q>> = s
                .iter()
                .map(|&i| {
                    let mut r = hyperplanes[i].weights.clone();
                    r.push(hyperplanes[i].offset.clone());
                    r
                })
                .collect();
            ok = !linalg::determinant(&rows).is_zero();
            ok
        });
    }
    ok
}

/// Number of adjacent unequal pairs.
pub fn alternation_count(labels: &[bool]) -> usize {
    labels.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of maximal runs of ones.
pub fn one_blocks(labels: &[bool]) -> usize {
    labels
        .iter()
        .enumerate()
        .filter(|&(i, &b)| b && (i == 0 || !labels[i - 1]))
        .count()
}

/// Whether some `(w0, w)` satisfies `s_i (w0 + w . x_i) >= 1` for all `i`,
/// with `s_i = +1` for label 1 and `-1` for label 0. Equivalent to strict
/// linear separability.
pub fn linear_separability(points: &[Vec<Q>], labels: &[bool]) -> bool {
    let sys = margin_system(points, labels);
    // Floating point proposes an answer that is then confirmed exactly: a
    // separator, doubled to absorb rounding at the margin, or a small
    // subsystem that the exact solver refutes.
    match float_copy(&sys).solve() {
        Ok(y) => {
            let doubled: Option<Vec<Q>> = y.iter().map(|v| Q::from_float(2.0 * v)).collect();
            if doubled.is_some_and(|y| sys.constraints.iter().all(|c| c.is_satisfied_by(&y))) {
                return true;
            }
        }
        Err(support) if !support.is_empty() && support.len() < sys.constraints.len() => {
            if sys.refuted_by(&support) {
                return false;
            }
            let mut sub = LinearSystem::new(sys.dim);
            for i in support {
                sub.push(sys.constraints[i].clone());
            }
            if !sub.is_feasible() {
                return false;
            }
        }
        Err(_) => {}
    }
    sys.is_feasible()
}

fn float_copy(sys: &LinearSystem<Q>) -> LinearSystem<f64> {
    let mut out = LinearSystem::new(sys.dim);
    for c in &sys.constraints {
        out.push(Constraint {
            coeffs: c.coeffs.iter().map(q_to_f64).collect(),
            rel: c.rel,
            rhs: q_to_f64(&c.rhs),
        });
    }
    out
}

/// The margin-1 system in the variables `(w0, w_1, ..., w_d)`.
pub fn margin_system(points: &[Vec<Q>], labels: &[bool]) -> LinearSystem<Q> {
    let d = points.first().map_or(0, Vec::len);
    let mut sys = LinearSystem::new(d + 1);
    let mut seen = std::collections::HashSet::new();
    for (p, &l) in points.iter().zip(labels) {
        if !seen.insert((p, l)) {
            continue;
        }
        let sign = if l { Q::one() } else { -Q::one() };
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.push(sign.clone());
        coeffs.extend(p.iter().map(|x| x * &sign));
        sys.push(Constraint::ge(coeffs, Q::one()));
    }
    sys
}

fn line_sequence(points: &[Point], labels: &[bool]) -> Result<Vec<bool>> {
    let reals = real_points(points, 1)?;
    let mut keyed: Vec<(&Q, bool)> = reals.iter().map(|p| &p[0]).zip(labels.iter().copied()).collect();
    keyed.sort_by(|a, b| a.0.cmp(b.0));
    Ok(keyed.into_iter().map(|(_, l)| l).collect())
}

fn real_points(points: &[Point], n: usize) -> Result<Vec<Vec<Q>>> {
    points
        .iter()
        .map(|p| match p {
            Point::Real(v) if v.len() == n => Ok(v.clone()),
            other => Err(Error::DomainMismatch(format!(
                "expected a point of R^{n}, got {other}"
            ))),
        })
        .collect()
}

fn cube_points(points: &[Point], n: usize) -> Result<Vec<Vec<bool>>> {
    points
        .iter()
        .map(|p| match p {
            Point::Cube(v) if v.len() == n => Ok(v.clone()),
            other => Err(Error::DomainMismatch(format!(
                "expected a vertex of {{0,1}}^{n}, got {other}"
            ))),
        })
        .collect()
}

fn indexed_points(points: &[Point], n: usize, poset: bool) -> Result<Vec<usize>> {
    points
        .iter()
        .map(|p| match (p, poset) {
            (Point::Poset(i), true) | (Point::Index(i), false) if *i < n => Ok(*i),
            (other, _) => Err(Error::DomainMismatch(format!(
                "expected an {} below {n}, got {other}",
                if poset { "poset element" } else { "index" }
            ))),
        })
        .collect()
}

/// The single coordinate along which distinct points vary.
fn colinear_axis(points: &[Vec<Q>]) -> Result<usize> {
    let first = &points[0];
    let varying: Vec<usize> = (0..first.len())
        .filter(|&c| points.iter().any(|p| p[c] != first[c]))
        .collect();
    match varying.as_slice() {
        [] => Ok(0),
        [axis] => Ok(*axis),
        _ => Err(Error::DomainMismatch(
            "real decision trees are only decided on axis-parallel colinear points".into(),
        )),
    }
}

/// First coordinate set `J` (lexicographic) of size `k` such that no two
/// points agreeing on `J` carry different labels.
pub fn junta_witness_free_subset(
    points: &[Vec<bool>],
    labels: &[bool],
    n: usize,
    k: usize,
) -> Result<Option<Vec<usize>>> {
    let candidates = binomial(n as u64, k as u64);
    if candidates > JUNTA_SCAN_BUDGET {
        return Err(Error::budget("junta subset scan", candidates, JUNTA_SCAN_BUDGET));
    }
    let mut found = None;
    for_each_subset(n, k, |subset| {
        let mut rows: std::collections::HashMap<Vec<bool>, bool> = Default::default();
        let clean = points.iter().zip(labels).all(|(p, &l)| {
            let key: Vec<bool> = subset.iter().map(|&c| p[c]).collect();
            *rows.entry(key).or_insert(l) == l
        });
        if clean {
            found = Some(subset.to_vec());
        }
        !clean
    });
    Ok(found)
}

/// Visits the `k`-subsets of `0..n` in lexicographic order until `visit`
/// returns `false`.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&combo) {
            return;
        }
        let mut i = k;
        while i > 0 && combo[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        combo[i - 1] += 1;
        for j in i..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Whether some `x` in `R^d` has `sign(t_i + w_i . x)` matching each label.
/// Solved homogeneously: `s_i (w_i . x + t_i tau) >= 1`, `tau >= 1`.
fn arrangement_cell_exists(hyperplanes: &[AffineFunctional], idx: &[usize], labels: &[bool]) -> bool {
    let d = hyperplanes[0].weights.len();
    let mut sys = LinearSystem::new(d + 1);
    for (&i, &l) in idx.iter().zip(labels) {
        let h = &hyperplanes[i];
        let sign = if l { Q::one() } else { -Q::one() };
        let mut coeffs: Vec<Q> = h.weights.iter().map(|w| w * &sign).collect();
        coeffs.push(&h.offset * &sign);
        sys.push(Constraint::ge(coeffs, Q::one()));
    }
    let mut tau = vec![Q::from_integer(0.into()); d + 1];
    tau[d] = Q::one();
    sys.push(Constraint::ge(tau, Q::one()));
    sys.is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[i64]) -> Vec<Point> {
        xs.iter().map(|&x| Point::real_from_ints(&[x])).collect()
    }

    fn labels(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn interval_example() {
        let c = FunctionClass::IntervalUnion { k: 1 };
        assert!(!c.consistent(&line(&[1, 2, 3]), &labels("101")).unwrap());
        assert!(c.consistent(&line(&[3, 1, 2]), &labels("101")).unwrap());
    }

    #[test]
    fn empty_point_list_is_consistent() {
        let classes = [
            FunctionClass::IntervalUnion { k: 1 },
            FunctionClass::Halfspace { n: 3 },
            FunctionClass::Junta { n: 4, k: 1 },
            FunctionClass::symmetric_fifth(10),
            FunctionClass::monotone(Poset::chain(3)),
        ];
        for c in classes {
            assert!(c.consistent(&[], &[]).unwrap());
        }
    }

    #[test]
    fn xor_is_not_a_halfspace() {
        let pts: Vec<Point> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|p| Point::real_from_ints(p))
            .collect();
        let c = FunctionClass::Halfspace { n: 2 };
        assert!(!c.consistent(&pts, &labels("1001")).unwrap());
        assert!(c.consistent(&pts, &labels("0001")).unwrap());
    }

    #[test]
    fn symmetric_counts_ones() {
        let c = FunctionClass::SymmetricThreshold { n: 10, t: 2 };
        let pts = vec![Point::Index(1), Point::Index(2), Point::Index(3)];
        assert!(!c.consistent(&pts, &labels("111")).unwrap());
        assert!(c.consistent(&pts, &labels("101")).unwrap());
        assert!(c.consistent(&[Point::Index(10)], &[true]).is_err());
    }

    #[test]
    fn alternation_counts() {
        assert_eq!(alternation_count(&labels("0101")), 3);
        assert_eq!(alternation_count(&labels("1111")), 0);
        assert_eq!(alternation_count(&labels("11001")), 2);
        assert_eq!(one_blocks(&labels("0110101")), 3);
    }

    #[test]
    fn separability_examples() {
        let pts: Vec<Vec<Q>> = [1, 2, 3].iter().map(|&x| vec![q(x)]).collect();
        assert!(linear_separability(&pts, &labels("111")));
        assert!(linear_separability(&pts, &labels("000")));
        assert!(!linear_separability(&pts, &labels("010")));
        assert!(linear_separability(&pts, &labels("011")));
    }

    #[test]
    fn intersection_refuses_general_position() {
        let c = FunctionClass::HalfspaceIntersection { n: 2, k: 1 };
        let pts = vec![Point::real_from_ints(&[1, 2])];
        assert!(matches!(c.consistent(&pts, &[true]), Err(Error::DomainMismatch(_))));
        let on_curve = vec![Point::real_from_ints(&[2, 4]), Point::real_from_ints(&[3, 9])];
        assert!(c.consistent(&on_curve, &labels("10")).unwrap());
    }

    #[test]
    fn real_tree_requires_axis_colinear_points() {
        let c = FunctionClass::RealDecisionTree { n: 2, k: 1 };
        let diagonal = vec![Point::real_from_ints(&[1, 1]), Point::real_from_ints(&[2, 2])];
        assert!(c.consistent(&diagonal, &labels("10")).is_err());
        let axis: Vec<Point> = (1..=3).map(|x| Point::real_from_ints(&[5, x])).collect();
        assert!(c.consistent(&axis, &labels("110")).unwrap());
        assert!(!c.consistent(&axis, &labels("101")).unwrap());
    }

    #[test]
    fn junta_example_rejects_every_single_coordinate() {
        let pts = vec![
            Point::cube_from_str("0000").unwrap(),
            Point::cube_from_str("0001").unwrap(),
            Point::cube_from_str("0010").unwrap(),
            Point::cube_from_str("0011").unwrap(),
        ];
        let c = FunctionClass::Junta { n: 4, k: 1 };
        assert!(!c.consistent(&pts, &labels("0110")).unwrap());
        let c2 = FunctionClass::Junta { n: 4, k: 2 };
        assert!(c2.consistent(&pts, &labels("0110")).unwrap());
    }

    #[test]
    fn monotone_checks_pairs() {
        let c = FunctionClass::monotone(Poset::chain(3));
        let pts = vec![Point::Poset(0), Point::Poset(2)];
        assert!(!c.consistent(&pts, &labels("10")).unwrap());
        assert!(c.consistent(&pts, &labels("01")).unwrap());
    }

    #[test]
    fn arrangement_cells() {
        let hs = vec![
            AffineFunctional { weights: vec![q(1), q(0)], offset: q(0) },
            AffineFunctional { weights: vec![q(0), q(1)], offset: q(0) },
            AffineFunctional { weights: vec![q(-1), q(-1)], offset: q(1) },
        ];
        let c = FunctionClass::HyperplaneArrangement { hyperplanes: hs };
        let pts: Vec<Point> = (0..3).map(Point::Index).collect();
        // 3 lines in general position: 7 cells, the missing sign vector is
        // x < 0, y < 0, x + y > 1.
        let realized = (0..8u64)
            .filter(|&m| c.consistent(&pts, mask_bits(m, 3).as_slice()).unwrap())
            .count();
        assert_eq!(realized, 7);
        assert!(!c.consistent(&pts, &labels("000")).unwrap());
    }

    fn mask_bits(m: u64, n: usize) -> Vec<bool> {
        (0..n).map(|i| m >> i & 1 == 1).collect()
    }

    #[test]
    fn ptf_cube_xor_needs_degree_two() {
        let pts: Vec<Point> = ["00", "01", "10", "11"]
            .iter()
            .map(|s| Point::cube_from_str(s).unwrap())
            .collect();
        let xor = labels("0110");
        assert!(!FunctionClass::Ptf { n: 2, k: 1, domain: PtfDomain::Cube }.consistent(&pts, &xor).unwrap());
        assert!(FunctionClass::Ptf { n: 2, k: 2, domain: PtfDomain::Cube }.consistent(&pts, &xor).unwrap());
    }

    #[test]
    fn subsets_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
