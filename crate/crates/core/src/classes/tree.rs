//! Decision trees over the hypercube and the real line.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Test {
    /// `x_i = 1 ?` on the hypercube.
    Bit(usize),
    /// `x_i < t ?` on the reals.
    Less(usize, Q),
}

/// Binary decision tree. `yes` is taken when the node's test holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Node {
        test: Test,
        yes: Box<DecisionTree>,
        no: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { yes, no, .. } => 1 + yes.node_count() + no.node_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Node { yes, no, .. } => yes.leaf_count() + no.leaf_count(),
        }
    }

    pub fn eval_bits(&self, x: &[bool]) -> bool {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Node { test, yes, no } => {
                let hit = match test {
                    Test::Bit(i) => x[*i],
                    Test::Less(..) => panic!("real test on a hypercube point"),
                };
                if hit { yes.eval_bits(x) } else { no.eval_bits(x) }
            }
        }
    }

    pub fn eval_real(&self, x: &[Q]) -> bool {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Node { test, yes, no } => {
                let hit = match test {
                    Test::Less(i, t) => x[*i] < *t,
                    Test::Bit(..) => panic!("bit test on a real point"),
                };
                if hit { yes.eval_real(x) } else { no.eval_real(x) }
            }
        }
    }

    /// True when no root-to-leaf path queries a bit coordinate twice.
    pub fn paths_query_distinct_bits(&self) -> bool {
        fn walk(t: &DecisionTree, seen: &mut Vec<usize>) -> bool {
            match t {
                DecisionTree::Leaf(_) => true,
                DecisionTree::Node { test, yes, no } => {
                    let pushed = match test {
                        Test::Bit(i) if seen.contains(i) => return false,
                        Test::Bit(i) => {
                            seen.push(*i);
                            true
                        }
                        Test::Less(..) => false,
                    };
                    let ok = walk(yes, seen) && walk(no, seen);
                    if pushed {
                        seen.pop();
                    }
                    ok
                }
            }
        }
        walk(self, &mut Vec::new())
    }
}

/// Builds a consistent tree with at most `points.len()` leaves by repeatedly
/// splitting on the first coordinate that separates the current set.
///
/// Points must be distinct bit vectors of equal length.
pub fn build_boolean_tree(points: &[Vec<bool>], labels: &[bool]) -> DecisionTree {
    assert_eq!(points.len(), labels.len());
    let idx: Vec<usize> = (0..points.len()).collect();
    build(points, labels, &idx)
}

fn build(points: &[Vec<bool>], labels: &[bool], idx: &[usize]) -> DecisionTree {
    let Some(&first) = idx.first() else {
        return DecisionTree::Leaf(false);
    };
    if idx.iter().all(|&i| labels[i] == labels[first]) {
        return DecisionTree::Leaf(labels[first]);
    }
    let n = points[first].len();
    let coord = (0..n)
        .find(|&c| idx.iter().any(|&i| points[i][c] != points[first][c]))
        .expect("distinct points always differ in some coordinate");
    let (ones, zeros): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| points[i][coord]);
    DecisionTree::Node {
        test: Test::Bit(coord),
        yes: Box::new(build(points, labels, &ones)),
        no: Box::new(build(points, labels, &zeros)),
    }
}

/// Limit on `reachable subsets x coordinates` explored by the exact search.
pub const TREE_SEARCH_BUDGET: u128 = 20_000_000;

/// Node count of the smallest consistent tree, if it is at most
/// `size_budget`.
///
/// Exact: memoized search over the sample subsets reachable by coordinate
/// splits. A node on a coordinate that does not split its subset is never
/// part of a minimum tree, so only splitting coordinates are tried.
pub fn min_tree_size_bruteforce(
    points: &[Vec<bool>],
    labels: &[bool],
    size_budget: usize,
) -> Result<Option<usize>> {
    let p = points.len();
    if p != labels.len() {
        return Err(Error::DomainMismatch("points and labels differ in length".into()));
    }
    if p == 0 {
        return Ok(Some(0));
    }
    let n = points[0].len();
    if p > 64 {
        return Err(Error::budget("decision-tree search points", p as u128, 64));
    }
    let subsets = if p >= 127 { u128::MAX } else { 1u128 << p };
    let cells = 3u128.checked_pow(n as u32).unwrap_or(u128::MAX);
    let requested = subsets.min(cells).saturating_mul(n.max(1) as u128);
    if requested > TREE_SEARCH_BUDGET {
        return Err(Error::budget("decision-tree search", requested, TREE_SEARCH_BUDGET));
    }
    let full: u64 = if p == 64 { u64::MAX } else { (1u64 << p) - 1 };
    let mut memo = HashMap::new();
    let best = min_size(points, labels, full, n, &mut memo);
    Ok((best <= size_budget).then_some(best))
}

fn min_size(
    points: &[Vec<bool>],
    labels: &[bool],
    set: u64,
    n: usize,
    memo: &mut HashMap<u64, usize>,
) -> usize {
    let members = || (0..points.len()).filter(move |&i| set >> i & 1 == 1);
    let first = members().next().expect("non-empty subset");
    if members().all(|i| labels[i] == labels[first]) {
        return 0;
    }
    if let Some(&v) = memo.get(&set) {
        return v;
    }
    let mut best = usize::MAX;
    for c in 0..n {
        let ones = members().filter(|&i| points[i][c]).fold(0u64, |m, i| m | 1 << i);
        if ones == 0 || ones == set {
            continue;
        }
        let left = min_size(points, labels, ones, n, memo);
        if left + 1 >= best {
            continue;
        }
        let right = min_size(points, labels, set & !ones, n, memo);
        best = best.min(1 + left + right);
    }
    memo.insert(set, best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize) -> Vec<Vec<bool>> {
        (0..1u32 << n)
            .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn single_point_is_a_leaf() {
        for label in [false, true] {
            let t = build_boolean_tree(&[bits("010")], &[label]);
            assert_eq!(t, DecisionTree::Leaf(label));
            assert_eq!(t.leaf_count(), 1);
        }
    }

    #[test]
    fn three_points_all_labellings() {
        let pts = vec![bits("000"), bits("011"), bits("101")];
        for mask in 0..8u32 {
            let labels: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let t = build_boolean_tree(&pts, &labels);
            assert!(t.leaf_count() <= 3);
            for (p, &l) in pts.iter().zip(&labels) {
                assert_eq!(t.eval_bits(p), l);
            }
        }
    }

    #[test]
    fn minimal_split() {
        let t = build_boolean_tree(&[bits("00"), bits("10")], &[false, true]);
        assert_eq!(t.node_count(), 1);
        assert!(matches!(t, DecisionTree::Node { test: Test::Bit(0), .. }));
    }

    #[test]
    fn constant_labels_need_no_nodes() {
        let pts = cube(3);
        assert_eq!(min_tree_size_bruteforce(&pts, &[true; 8], 0).unwrap(), Some(0));
    }

    #[test]
    fn parity_on_three_bits_needs_seven_nodes() {
        let pts = cube(3);
        let parity: Vec<bool> = pts.iter().map(|p| p.iter().filter(|&&b| b).count() % 2 == 1).collect();
        assert_eq!(min_tree_size_bruteforce(&pts, &parity, 10).unwrap(), Some(7));
        assert_eq!(min_tree_size_bruteforce(&pts, &parity, 6).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let pts: Vec<Vec<bool>> = (0..40u64)
            .map(|m| (0..40).map(|i| m >> (i % 6) & 1 == 1 || i == m as usize).collect())
            .collect();
        let labels = vec![false; 40];
        assert!(matches!(
            min_tree_size_bruteforce(&pts, &labels, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
