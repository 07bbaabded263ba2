use super::{distinct, TesterConfig, Verdict, Witness};
use crate::domain::{sample, FiniteDistribution};
use crate::error::{Error, Result};
use crate::hardness::min_enclosing_ball;

/// Largest group of mutually close points searched exactly for a cover.
pub const PARTITION_BUDGET: usize = 12;

const RADIUS_TOL: f64 = 1e-9;

/// `ceil(4 (n k ln(k+1) / eps) ln(e / eps))` for points in `R^n`.
pub fn cluster_sample_size(n: usize, k: usize, epsilon: f64) -> usize {
    let nk = (n * k) as f64;
    (4.0 * (nk * ((k + 1) as f64).ln() / epsilon) * (std::f64::consts::E / epsilon).ln()).ceil() as usize
}

fn fits_in_unit_ball(points: &[Vec<f64>], idx: &[usize]) -> Result<bool> {
    let sub: Vec<Vec<f64>> = idx.iter().map(|&i| points[i].clone()).collect();
    Ok(min_enclosing_ball(&sub)?.radius <= 1.0 + RADIUS_TOL)
}

/// Whether `k` balls of radius 1 cover the points.
pub fn cluster_cover_check(points: &[Vec<f64>], k: usize) -> Result<bool> {
    Ok(cluster_cover_witness(points, k)?.is_none())
}

/// `None` when `k` unit balls cover the points, otherwise the points of the
/// groups that could not be covered.
///
/// Two points more than 2 apart never share a unit ball, so each ball covers
/// part of one connected component of the "within distance 2" graph. A
/// component fitting in one ball needs one ball; the others are split by
/// exact search, which is budgeted by component size.
pub fn cluster_cover_witness(points: &[Vec<f64>], k: usize) -> Result<Option<Vec<usize>>> {
    if points.is_empty() {
        return Ok(None);
    }
    let all: Vec<usize> = (0..points.len()).collect();
    if k == 0 {
        return Ok(Some(all));
    }
    if k == 1 {
        return Ok((!fits_in_unit_ball(points, &all)?).then_some(all));
    }
    let components = components_within(points, 2.0 + RADIUS_TOL);
    let mut hard = Vec::new();
    let mut needed = 0;
    for comp in &components {
        if fits_in_unit_ball(points, comp)? {
            needed += 1;
        } else {
            needed += 2;
            hard.push(comp.clone());
        }
    }
    if needed > k {
        return Ok(Some(hard.concat()));
    }
    let mut slack = k - needed;
    for comp in &hard {
        if comp.len() > PARTITION_BUDGET {
            return Err(Error::budget("cover partition search", comp.len() as u128, PARTITION_BUDGET as u128));
        }
        // Each hard component already has 2 balls counted.
        let mut used = None;
        for groups in 2..=2 + slack {
            if partition_exists(points, comp, groups)? {
                used = Some(groups);
                break;
            }
        }
        match used {
            Some(g) => slack -= g - 2,
            None => return Ok(Some(hard.concat())),
        }
    }
    Ok(None)
}

fn components_within(points: &[Vec<f64>], reach: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for b in 0..n {
                if comp[b] == usize::MAX && crate::hardness::dist(&points[a], &points[b]) <= reach {
                    comp[b] = id;
                    members.push(b);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Whether `idx` splits into at most `groups` parts each inside a unit ball.
fn partition_exists(points: &[Vec<f64>], idx: &[usize], groups: usize) -> Result<bool> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    assign(points, idx, 0, groups, &mut parts)
}

fn assign(points: &[Vec<f64>], idx: &[usize], next: usize, groups: usize, parts: &mut Vec<Vec<usize>>) -> Result<bool> {
    if next == idx.len() {
        return Ok(true);
    }
    let p = idx[next];
    for g in 0..parts.len() {
        parts[g].push(p);
        if fits_in_unit_ball(points, &parts[g])? && assign(points, idx, next + 1, groups, parts)? {
            return Ok(true);
        }
        parts[g].pop();
    }
    if parts.len() < groups {
        parts.push(vec![p]);
        if assign(points, idx, next + 1, groups, parts)? {
            return Ok(true);
        }
        parts.pop();
    }
    Ok(false)
}

/// Samples from a distribution over `points` in `R^n` and accepts iff `k`
/// unit balls cover the sample. Witness points are indices into `points`.
pub fn cluster_test(points: &[Vec<f64>], dist: &FiniteDistribution, k: usize, cfg: &TesterConfig) -> Result<Verdict> {
    if dist.len() != points.len() {
        return Err(Error::DomainMismatch(format!(
            "distribution on {} points for {} points",
            dist.len(),
            points.len()
        )));
    }
    let n = points.first().map_or(0, Vec::len);
    let m = cfg.size_or(cluster_sample_size(n, k, cfg.epsilon));
    let drawn = distinct(&sample(dist, m, cfg.seed));
    let sub: Vec<Vec<f64>> = drawn.iter().map(|&i| points[i].clone()).collect();
    match cluster_cover_witness(&sub, k)? {
        None => Ok(Verdict::accept(m)),
        Some(w) => Ok(Verdict::reject(
            m,
            Witness::Uncovered {
                points: w.into_iter().map(|i| drawn[i]).collect(),
            },
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_examples() {
        let pts = vec![vec![0.0, 0.0], vec![2.5, 0.0]];
        assert!(cluster_cover_check(&pts[..1], 1).unwrap());
        assert!(!cluster_cover_check(&pts, 1).unwrap());
        assert!(cluster_cover_check(&pts, 2).unwrap());
    }

    #[test]
    fn splits_a_close_group() {
        // Four points on a line 0.9 apart: one component, needs two balls.
        let pts: Vec<Vec<f64>> = (0..4).map(|i| vec![0.9 * i as f64]).collect();
        assert!(!cluster_cover_check(&pts, 1).unwrap());
        assert!(cluster_cover_check(&pts, 2).unwrap());
        let mut more = pts.clone();
        more.push(vec![100.0]);
        assert!(!cluster_cover_check(&more, 2).unwrap());
        assert!(cluster_cover_check(&more, 3).unwrap());
    }

    #[test]
    fn sample_size_formula() {
        // 4 * (30 ln 2 / 0.1) * ln(10 e) = 2747.01
        assert_eq!(cluster_sample_size(30, 1, 0.1), 2748);
    }
}
