//! Linear feasibility by phase-1 simplex with Bland's rule.
//!
//! The solver is generic over [`Field`]: `BigRational` gives exact
//! decisions, `f64` is used only by Monte-Carlo geometry.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

pub trait Field: Clone + Num + Signed + PartialOrd + Debug {
    /// True when the value must be treated as zero.
    fn is_negligible(&self) -> bool;
}

impl Field for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-10
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

/// `coeffs . y  (rel)  rhs` over free variables `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub rel: Relation,
    pub rhs: T,
}

impl<T: Field> Constraint<T> {
    pub fn ge(coeffs: Vec<T>, rhs: T) -> Self {
        Self {
            coeffs,
            rel: Relation::Ge,
            rhs,
        }
    }

    pub fn le(coeffs: Vec<T>, rhs: T) -> Self {
        Self {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<T>, rhs: T) -> Self {
        Self {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, y: &[T]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(y)
            .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        let slack = lhs - self.rhs.clone();
        match self.rel {
            Relation::Ge => slack.is_negligible() || slack.is_positive(),
            Relation::Le => slack.is_negligible() || slack.is_negative(),
            Relation::Eq => slack.is_negligible(),
        }
    }
}

/// A system of linear constraints over `dim` free variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<T> {
    pub dim: usize,
    pub constraints: Vec<Constraint<T>>,
}

impl<T: Field> LinearSystem<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint<T>) {
        assert_eq!(c.coeffs.len(), self.dim, "constraint dimension mismatch");
        self.constraints.push(c);
    }

    pub fn is_feasible(&self) -> bool {
        self.find_point().is_some()
    }

    /// A point satisfying every constraint, if one exists.
    pub fn find_point(&self) -> Option<Vec<T>> {
        if self.constraints.is_empty() {
            return Some(vec![T::zero(); self.dim]);
        }
        Tableau::build(self).solve().ok()
    }

    /// A feasible point, or else the support of a Farkas certificate as in
    /// [`Self::infeasible_subset`]. In floating point either answer is only
    /// a hint.
    pub fn solve(&self) -> std::result::Result<Vec<T>, Vec<usize>> {
        if self.constraints.is_empty() {
            return Ok(vec![T::zero(); self.dim]);
        }
        Tableau::build(self).solve()
    }

    /// For an infeasible system, the constraints carrying a nonzero Farkas
    /// multiplier at the phase-1 optimum. That subset is itself infeasible
    /// and usually far smaller than the system. `None` when feasible.
    pub fn infeasible_subset(&self) -> Option<Vec<usize>> {
        if self.constraints.is_empty() {
            return None;
        }
        Tableau::build(self).solve().err()
    }
}

/// Dense phase-1 tableau. Columns: `y+ (d)`, `y- (d)`, one slack per
/// inequality, one artificial per row, then the right-hand side.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Phase-1 reduced costs, last entry is minus the objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    dim: usize,
    width: usize,
}

impl<T: Field> Tableau<T> {
    fn build(sys: &LinearSystem<T>) -> Self {
        let d = sys.dim;
        let m = sys.constraints.len();
        let slacks = sys
            .constraints
            .iter()
            .filter(|c| c.rel != Relation::Eq)
            .count();
        let art0 = 2 * d + slacks;
        let width = art0 + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut slack_col = 2 * d;
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![T::zero(); width];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[d + j] = -a.clone();
            }
            match c.rel {
                Relation::Ge => {
                    row[slack_col] = -T::one();
                    slack_col += 1;
                }
                Relation::Le => {
                    row[slack_col] = T::one();
                    slack_col += 1;
                }
                Relation::Eq => {}
            }
            row[width - 1] = c.rhs.clone();
            if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[art0 + i] = T::one();
            rows.push(row);
        }
        let mut cost = vec![T::zero(); width];
        for row in &rows {
            for j in 0..art0 {
                cost[j] = cost[j].clone() - row[j].clone();
            }
            cost[width - 1] = cost[width - 1].clone() - row[width - 1].clone();
        }
        Self {
            rows,
            cost,
            basis: (art0..art0 + m).collect(),
            dim: d,
            width,
        }
    }

    /// A feasible point, or the support of the dual certificate.
    fn solve(mut self) -> std::result::Result<Vec<T>, Vec<usize>> {
        let rhs = self.width - 1;
        // Dantzig's rule until a degenerate pivot is seen, then Bland's rule,
        // which cannot cycle.
        let mut bland = false;
        loop {
            let candidates = (0..rhs).filter(|&j| {
                let c = &self.cost[j];
                c.is_negative() && !c.is_negligible()
            });
            let entering = if bland {
                candidates.take(1).next()
            } else {
                candidates.fold(None, |acc: Option<usize>, j| match acc {
                    Some(b) if self.cost[b] <= self.cost[j] => Some(b),
                    _ => Some(j),
                })
            };
            let Some(col) = entering else { break };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[col];
                if !a.is_positive() || a.is_negligible() {
                    continue;
                }
                let ratio = row[rhs].clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase 1 is bounded, so exact arithmetic always finds a row;
            // in floating point the tolerance can discard every candidate.
            let Some((pivot_row, ratio)) = best else {
                return Err(Vec::new());
            };
            if ratio.is_negligible() {
                bland = true;
            }
            self.pivot(pivot_row, col);
        }
        let objective = -self.cost[rhs].clone();
        if !objective.is_negligible() {
            let art0 = rhs - self.rows.len();
            // Reduced cost of artificial i is 1 - y_i.
            return Err((0..self.rows.len())
                .filter(|&i| !(self.cost[art0 + i].clone() - T::one()).is_negligible())
                .collect());
        }
        let mut values = vec![T::zero(); 2 * self.dim];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < 2 * self.dim {
                values[b] = self.rows[i][rhs].clone();
            }
        }
        Ok((0..self.dim)
            .map(|j| values[j].clone() - values[self.dim + j].clone())
            .collect())
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / p.clone();
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, c);
        }
        eliminate(&mut self.cost, &pivot_row, c);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }
}

fn eliminate<T: Field>(row: &mut [T], pivot_row: &[T], c: usize) {
    let factor = row[c].clone();
    if factor.is_zero() {
        return;
    }
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *v = v.clone() - factor.clone() * p.clone();
        }
    }
}

impl LinearSystem<BigRational> {
    /// Whether the `subset` of `>=` constraints carries an exact Farkas
    /// certificate: multipliers `y > 0` with `sum y_i a_i = 0` and
    /// `sum y_i b_i > 0`. Only one-dimensional null spaces are tried, which
    /// covers the minimal infeasible subsets a solver reports. `false`
    /// proves nothing.
    pub fn refuted_by(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&i| self.constraints[i].rel != Relation::Ge) {
            return false;
        }
        let columns: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|j| subset.iter().map(|&i| self.constraints[i].coeffs[j].clone()).collect())
            .collect();
        let basis = crate::linalg::kernel(&columns, subset.len());
        let [y] = basis.as_slice() else {
            return false;
        };
        let sign = if y[0].is_negative() { -BigRational::one() } else { BigRational::one() };
        if !y.iter().all(|v| (v * &sign).is_positive()) {
            return false;
        }
        let value: BigRational = y.iter().zip(subset).map(|(v, &i)| v * &sign * &self.constraints[i].rhs).sum();
        value.is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Q};

    fn sys(dim: usize, cs: Vec<Constraint<Q>>) -> LinearSystem<Q> {
        let mut s = LinearSystem::new(dim);
        for c in cs {
            s.push(c);
        }
        s
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let s = sys(1, vec![Constraint::ge(vec![q(1)], q(1)), Constraint::le(vec![q(1)], q(0))]);
        assert!(!s.is_feasible());
    }

    #[test]
    fn returned_point_satisfies_constraints() {
        let s = sys(
            2,
            vec![
                Constraint::ge(vec![q(1), q(1)], q(3)),
                Constraint::le(vec![q(1), q(-1)], q(-5)),
                Constraint::eq(vec![q(2), q(1)], q(-1)),
            ],
        );
        let y = s.find_point().expect("feasible");
        for c in &s.constraints {
            assert!(c.is_satisfied_by(&y));
        }
    }

    #[test]
    fn certificate_support_is_infeasible() {
        let s = sys(
            2,
            vec![
                Constraint::ge(vec![q(0), q(1)], q(0)),
                Constraint::ge(vec![q(1), q(0)], q(1)),
                Constraint::le(vec![q(1), q(1)], q(5)),
                Constraint::le(vec![q(1), q(0)], q(0)),
            ],
        );
        let core = s.infeasible_subset().expect("infeasible");
        assert_eq!(core, vec![1, 3]);
        assert!(sys(2, vec![Constraint::ge(vec![q(1), q(0)], q(1))]).infeasible_subset().is_none());
    }

    #[test]
    fn farkas_certificate_on_a_minimal_core() {
        let s = sys(
            1,
            vec![
                Constraint::ge(vec![q(1)], q(1)),
                Constraint::ge(vec![q(-1)], q(0)),
                Constraint::ge(vec![q(2)], q(-3)),
            ],
        );
        assert!(s.refuted_by(&[0, 1]));
        assert!(!s.refuted_by(&[0, 2]));
        assert!(!s.refuted_by(&[0, 1, 2]));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(LinearSystem::<Q>::new(3).is_feasible());
    }

    #[test]
    fn degenerate_cycling_prone_system() {
        // Beale-style degenerate rows; Bland's rule must terminate.
        let s = sys(
            4,
            vec![
                Constraint::le(vec![q(1) / q(4), q(-8), q(-1), q(9)], q(0)),
                Constraint::le(vec![q(1) / q(2), q(-12), q(-1) / q(2), q(3)], q(0)),
                Constraint::le(vec![q(0), q(0), q(1), q(0)], q(1)),
                Constraint::ge(vec![q(1), q(0), q(0), q(0)], q(0)),
                Constraint::ge(vec![q(0), q(1), q(0), q(0)], q(0)),
                Constraint::ge(vec![q(0), q(0), q(1), q(0)], q(0)),
                Constraint::ge(vec![q(0), q(0), q(0), q(1)], q(0)),
                Constraint::ge(vec![q(-3) / q(4), q(150), q(-1) / q(50), q(6)], q(1) / q(20)),
            ],
        );
        let y = s.find_point().expect("feasible");
        for c in &s.constraints {
            assert!(c.is_satisfied_by(&y), "{c:?} at {y:?}");
        }
    }

    #[test]
    fn float_mode_agrees_on_simple_cases() {
        let mut s = LinearSystem::<f64>::new(2);
        s.push(Constraint::ge(vec![1.0, 0.0], 1.0));
        s.push(Constraint::ge(vec![0.0, 1.0], 1.0));
        s.push(Constraint::le(vec![1.0, 1.0], 1.5));
        assert!(!s.is_feasible());
        s.constraints.pop();
        s.push(Constraint::le(vec![1.0, 1.0], 2.5));
        assert!(s.is_feasible());
    }
}
