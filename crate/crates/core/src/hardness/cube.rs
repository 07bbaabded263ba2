//! Moment-curve point sets and random-hypercube rank checks.

use rand::Rng;
use serde::Serialize;

use crate::classes::{monomial_embed, multilinear_monomials};
use crate::domain::{FiniteDomain, Point, Seed};
use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::rational::{binomial_prefix_sum, q};

/// Largest embedding dimension `C(n, <=k)` accepted by the rank check.
pub const RANK_DIMENSION_BUDGET: u128 = 4096;

/// `(t, t^2, ..., t^n)` for `t = 1, ..., size`. Any `n + 1` of these points
/// are affinely independent (a Vandermonde determinant).
pub fn general_position_set(n: usize, size: usize) -> Result<FiniteDomain> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let points = (1..=size as i64)
        .map(|t| {
            let mut coords = Vec::with_capacity(n);
            let mut pow = q(1);
            for _ in 0..n {
                pow *= q(t);
                coords.push(pow.clone());
            }
            Point::Real(coords)
        })
        .collect();
    FiniteDomain::new(points)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankCheck {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub t: usize,
    pub trials: usize,
    pub full_rank: usize,
    pub fraction: f64,
    /// `C(floor(n - log2 C(n, <=k) - t), <=k)`; sizes below it are independent
    /// with probability at least `1 - 2^-t`.
    pub threshold: u128,
    pub bound: f64,
}

/// Largest `m` covered by the independence bound for `(n, k, t)`.
pub fn independence_threshold(n: usize, k: usize, t: usize) -> u128 {
    let dim = binomial_prefix_sum(n as u64, k as u64) as f64;
    let reduced = (n as f64 - dim.log2() - t as f64).floor();
    if reduced < 0.0 {
        0
    } else {
        binomial_prefix_sum(reduced as u64, k as u64)
    }
}

/// Uniform `{-1, +1}^n` vectors.
pub fn random_sign_vectors(n: usize, m: usize, rng: &mut impl Rng) -> Vec<Vec<i8>> {
    (0..m)
        .map(|_| (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect())
        .collect()
}

/// Whether the degree-`k` monomial images of the sign vectors are linearly
/// independent, by exact rank.
pub fn images_independent(xs: &[Vec<i8>], k: usize) -> bool {
    let rows: Vec<Vec<i64>> = xs
        .iter()
        .map(|x| monomial_embed(x, k).into_iter().map(i64::from).collect())
        .collect();
    integer_rank(&rows) == xs.len()
}

/// Fraction of trials in which `m` uniform sign vectors have independent
/// degree-`k` monomial images.
pub fn cube_rank_check(n: usize, k: usize, m: usize, t: usize, trials: usize, seed: Seed) -> Result<RankCheck> {
    let dim = binomial_prefix_sum(n as u64, k as u64);
    if dim > RANK_DIMENSION_BUDGET {
        return Err(Error::budget("monomial dimension", dim, RANK_DIMENSION_BUDGET));
    }
    debug_assert_eq!(multilinear_monomials(n, k).len() as u128, dim);
    let full_rank = (0..trials)
        .filter(|&trial| {
            let mut rng = seed.derive(trial as u64).rng();
            images_independent(&random_sign_vectors(n, m, &mut rng), k)
        })
        .count();
    Ok(RankCheck {
        n,
        k,
        m,
        t,
        trials,
        full_rank,
        fraction: if trials == 0 { 0.0 } else { full_rank as f64 / trials as f64 },
        threshold: independence_threshold(n, k, t),
        bound: 1.0 - 0.5f64.powi(t as i32),
    })
}
