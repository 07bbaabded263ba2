//! Sphere mixtures, enclosing balls and hemisphere probabilities.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::domain::Seed;
use crate::error::{Error, Result};
use crate::feasibility::{Constraint, LinearSystem};
use crate::rational::Q;

/// Smallest ball containing every point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        dist2(&self.center, p).sqrt() <= self.radius + tol
    }
}

/// Minimum enclosing ball by a pivoting walk in the style of Fischer,
/// Gärtner and Kutz, which stays polynomial in high dimension.
///
/// The center `c` is kept equidistant from a support set `T` whose points lie
/// on the boundary, with every point inside. When `c` is not the circumcenter
/// of `T` it walks toward it, shrinking the ball, until the walk ends or a
/// new point reaches the boundary and joins `T`. At the circumcenter, a
/// support point with negative affine weight is dropped; when none is, the
/// center lies in the convex hull of `T` and the ball is optimal.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Result<Ball> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("enclosing ball of no points".into()));
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidInput("points differ in dimension".into()));
    }
    let mut center = first.clone();
    let far = farthest(points, &center);
    let mut support = vec![far];
    let limit = 1000 * (points.len() + d + 1);
    for _ in 0..limit {
        let r2 = dist2(&points[support[0]], &center);
        let scale = r2.max(1.0);
        let Some((target, weights)) = circumsphere(points, &support) else {
            return Err(Error::Precondition("enclosing ball support became degenerate".into()));
        };
        let step: Vec<f64> = target.iter().zip(&center).map(|(t, c)| t - c).collect();
        // With d + 1 support points the center is already pinned down.
        if support.len() > d || dot(&step, &step) <= WALK_TOL * scale {
            center = target;
            let (worst, w) = weights
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (i, &w)| if w < acc.1 { (i, w) } else { acc });
            if w >= -WEIGHT_TOL {
                let radius = dist2(&points[farthest(points, &center)], &center).sqrt();
                return Ok(Ball { center, radius });
            }
            support.remove(worst);
            continue;
        }
        // Along c + t * step every support point stays equidistant; a point p
        // reaches the boundary at t = (r^2 - |p - c|^2) / (2 step . (q - p)).
        let q = &points[support[0]];
        let mut best = (1.0, None);
        for (i, p) in points.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let qp: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
            let denom = 2.0 * dot(&step, &qp);
            // Copies of support points, and points the walk moves along, have
            // denominators that are rounding noise; they never block.
            if denom <= ANGLE_TOL * 2.0 * (dot(&step, &step) * dot(&qp, &qp)).sqrt() {
                continue;
            }
            let t = ((r2 - dist2(p, &center)) / denom).max(0.0);
            if t < best.0 {
                best = (t, Some(i));
            }
        }
        for (c, s) in center.iter_mut().zip(&step) {
            *c += best.0 * s;
        }
        if let Some(i) = best.1 {
            support.push(i);
        }
    }
    Err(Error::Precondition("enclosing ball walk did not converge".into()))
}

/// Squared-step and weight tolerances of the enclosing-ball walk, relative
/// to the squared radius.
const WALK_TOL: f64 = 1e-18;
const WEIGHT_TOL: f64 = 1e-12;
/// Smallest cosine between the walk direction and `q - p` for `p` to block.
const ANGLE_TOL: f64 = 1e-9;

fn farthest(points: &[Vec<f64>], c: &[f64]) -> usize {
    (0..points.len())
        .map(|i| (i, dist2(&points[i], c)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
        .0
}

/// Center of the sphere through the given points whose center lies in their
/// affine hull, with its affine weights on the points.
fn circumsphere(points: &[Vec<f64>], support: &[usize]) -> Option<(Vec<f64>, Vec<f64>)> {
    let p0 = &points[support[0]];
    let v: Vec<Vec<f64>> = support[1..]
        .iter()
        .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let m = v.len();
    if m == 0 {
        return Some((p0.clone(), vec![1.0]));
    }
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let mut row: Vec<f64> = (0..m).map(|l| 2.0 * dot(&v[j], &v[l])).collect();
            row.push(dot(&v[j], &v[j]));
            row
        })
        .collect();
    let scale = (0..m).map(|j| a[j][j]).fold(0.0, f64::max);
    let alpha = solve_augmented(&mut a, 1e-12 * scale)?;
    let mut c = p0.clone();
    for (l, vl) in v.iter().enumerate() {
        for (ci, x) in c.iter_mut().zip(vl) {
            *ci += alpha[l] * x;
        }
    }
    let mut weights = vec![1.0 - alpha.iter().sum::<f64>()];
    weights.extend(alpha);
    Some((c, weights))
}

/// Gaussian elimination with partial pivoting on an `m x (m+1)` augmented
/// matrix; `None` when a pivot falls below `tol`.
fn solve_augmented(a: &mut [Vec<f64>], tol: f64) -> Option<Vec<f64>> {
    let m = a.len();
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= tol {
            return None;
        }
        a.swap(c, p);
        for i in c + 1..m {
            let f = a[i][c] / a[c][c];
            for j in c..=m {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    let mut x = vec![0.0; m];
    for c in (0..m).rev() {
        let s: f64 = (c + 1..m).map(|j| a[c][j] * x[j]).sum();
        x[c] = (a[c][m] - s) / a[c][c];
    }
    Some(x)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A uniform point on the sphere of the given radius around the origin in
/// `R^n`: a normalized standard Gaussian vector, rescaled.
pub fn sample_sphere(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = dot(&g, &g).sqrt();
        if norm > 0.0 {
            return g.into_iter().map(|x| x * radius / norm).collect();
        }
    }
}

/// Probability that `t` uniform points on the unit sphere of `R^n` lie in a
/// common hemisphere: `2^{1-t} * sum_{k<n} C(t-1, k)`.
pub fn wendel_probability(t: usize, n: usize) -> Result<Q> {
    if t == 0 || n == 0 {
        return Err(Error::InvalidInput("wendel_probability needs t >= 1 and n >= 1".into()));
    }
    let mut sum = BigUint::zero();
    let mut c = BigUint::one();
    for k in 0..n.min(t) {
        sum += &c;
        c = c * BigUint::from(t - 1 - k) / BigUint::from(k + 1);
    }
    let denom = BigUint::one() << (t - 1);
    Ok(Q::new(sum.into(), denom.into()))
}

/// Monte-Carlo frequency of the hemisphere event for `t` points in `R^n`:
/// some `w` has `w . x_i >= 1` for every sample, decided by a float LP.
pub fn hemisphere_frequency(t: usize, n: usize, trials: usize, seed: Seed) -> f64 {
    let hits = (0..trials)
        .filter(|&trial| {
            let mut rng = seed.derive(trial as u64).rng();
            let mut sys = LinearSystem::new(n);
            for _ in 0..t {
                sys.push(Constraint::ge(sample_sphere(n, 1.0, &mut rng), 1.0));
            }
            sys.is_feasible()
        })
        .count();
    if trials == 0 {
        0.0
    } else {
        hits as f64 / trials as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Yes,
    No,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "yes" => Ok(Side::Yes),
            "no" => Ok(Side::No),
            other => Err(Error::Parse(format!("side must be yes or no, got {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Yes => "yes",
            Side::No => "no",
        }
    }
}

/// Points drawn from a uniform mixture of `k` spheres of radius `1 + eta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterInstance {
    pub side: Side,
    pub centers: Vec<Vec<f64>>,
    pub radius: f64,
    pub points: Vec<Vec<f64>>,
    /// Sphere each point was drawn from.
    pub sphere: Vec<usize>,
    pub seed: u64,
}

/// Center of sphere `i`: `(5 + 2 eta) e_i`. Centers are `(5 + 2 eta) sqrt 2`
/// apart, so the sphere surfaces are at least 3 apart.
pub fn cluster_centers(n: usize, k: usize, eta: f64) -> Vec<Vec<f64>> {
    (0..k)
        .map(|i| {
            let mut c = vec![0.0; n];
            c[i] = 5.0 + 2.0 * eta;
            c
        })
        .collect()
}

/// Samples `m` points from the sphere mixture. The yes side needs
/// `m <= nk/2`; the no side needs `2nk <= m <= 8nk`.
pub fn cluster_instance(n: usize, k: usize, eta: f64, m: usize, side: Side, seed: Seed) -> Result<ClusterInstance> {
    if k == 0 || n == 0 || k > n {
        return Err(Error::InvalidInput(format!("cluster instance needs 1 <= k <= n, got n={n}, k={k}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidInput(format!("eta must lie in (0, 1), got {eta}")));
    }
    if (k as f64) >= (n as f64 / 6.0).exp() / 10.0 {
        return Err(Error::Precondition(format!("k={k} too large for n={n}: need k < e^(n/6)/10")));
    }
    let nk = n * k;
    let ok = match side {
        Side::Yes => 2 * m <= nk,
        Side::No => 2 * nk <= m && m <= 8 * nk,
    };
    if !ok || m == 0 {
        return Err(Error::Precondition(format!(
            "m={m} does not fit the {} side for nk={nk}",
            side.name()
        )));
    }
    let centers = cluster_centers(n, k, eta);
    let radius = 1.0 + eta;
    let mut rng = seed.rng();
    let mut points = Vec::with_capacity(m);
    let mut sphere = Vec::with_capacity(m);
    for _ in 0..m {
        let i = rng.random_range(0..k);
        let u = sample_sphere(n, radius, &mut rng);
        points.push(centers[i].iter().zip(&u).map(|(c, x)| c + x).collect());
        sphere.push(i);
    }
    Ok(ClusterInstance {
        side,
        centers,
        radius,
        points,
        sphere,
        seed: seed.0,
    })
}

/// Throws `round(cload * n * k)` balls into `k` bins per trial and returns
/// the empirical probabilities that the maximum load is at most
/// `(1 + delta) cload n` and that the minimum load is at least
/// `(1 - delta) cload n`.
pub fn balls_in_bins_check(cload: f64, n: usize, k: usize, delta: f64, trials: usize, seed: Seed) -> Result<(f64, f64)> {
    if k == 0 || cload <= 0.0 || delta <= 0.0 {
        return Err(Error::InvalidInput("balls in bins needs k >= 1, cload > 0, delta > 0".into()));
    }
    if trials == 0 {
        return Ok((0.0, 0.0));
    }
    let per_bin = cload * n as f64;
    let balls = (per_bin * k as f64).round() as usize;
    let (mut over_ok, mut under_ok) = (0usize, 0usize);
    for trial in 0..trials {
        let mut rng = seed.derive(trial as u64).rng();
        let mut loads = vec![0usize; k];
        for _ in 0..balls {
            loads[rng.random_range(0..k)] += 1;
        }
        let max = *loads.iter().max().expect("k >= 1") as f64;
        let min = *loads.iter().min().expect("k >= 1") as f64;
        over_ok += usize::from(max <= (1.0 + delta) * per_bin);
        under_ok += usize::from(min >= (1.0 - delta) * per_bin);
    }
    Ok((over_ok as f64 / trials as f64, under_ok as f64 / trials as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_ratio;

    #[test]
    fn ball_examples() {
        let b = min_enclosing_ball(&[vec![1.0, 2.0]]).unwrap();
        assert_eq!(b.radius, 0.0);
        let b = min_enclosing_ball(&[vec![0.0, 0.0], vec![2.5, 0.0]]).unwrap();
        assert!((b.radius - 1.25).abs() < 1e-12);
        assert!((b.center[0] - 1.25).abs() < 1e-12);
        // Right triangle: the hypotenuse is a diameter.
        let b = min_enclosing_ball(&[vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, 3.0], vec![1.0, 1.0]]).unwrap();
        assert!((b.radius - 2.5).abs() < 1e-12);
        assert!(min_enclosing_ball(&[]).is_err());
    }

    #[test]
    fn duplicate_and_colinear_points() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0]];
        let b = min_enclosing_ball(&pts).unwrap();
        assert!((b.radius - 1.5).abs() < 1e-12);
    }

    #[test]
    fn wendel_values() {
        assert_eq!(wendel_probability(3, 2).unwrap(), q_ratio(3, 4));
        assert_eq!(wendel_probability(6, 3).unwrap(), q_ratio(1, 2));
        assert_eq!(wendel_probability(2, 3).unwrap(), q_ratio(1, 1));
        assert_eq!(wendel_probability(1, 1).unwrap(), q_ratio(1, 1));
    }

    #[test]
    fn sphere_points_have_the_radius() {
        let mut rng = Seed(3).rng();
        for _ in 0..20 {
            let p = sample_sphere(7, 1.5, &mut rng);
            assert!((dot(&p, &p).sqrt() - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn cluster_preconditions() {
        assert!(cluster_instance(30, 1, 0.05, 16, Side::Yes, Seed(0)).is_err());
        assert!(cluster_instance(30, 1, 0.05, 59, Side::No, Seed(0)).is_err());
        let inst = cluster_instance(30, 2, 0.05, 20, Side::Yes, Seed(0)).unwrap();
        for (p, &s) in inst.points.iter().zip(&inst.sphere) {
            assert!((dist2(p, &inst.centers[s]).sqrt() - 1.05).abs() < 1e-9);
        }
    }

    #[test]
    fn one_bin_holds_everything() {
        assert_eq!(balls_in_bins_check(4.0, 30, 1, 0.5, 10, Seed(0)).unwrap(), (1.0, 1.0));
    }
}
