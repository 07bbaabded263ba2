//! Exact rank and determinant over the rationals.

use num_traits::Zero;

use crate::rational::Q;

/// Rank of a dense rational matrix (rows of equal length).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn determinant(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut det = Q::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// A basis of the right null space `{x : rows x = 0}`.
pub fn kernel(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::from_integer(1.into()) / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Q::zero(); cols];
            x[free] = Q::from_integer(1.into());
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][free].clone();
            }
            x
        })
        .collect()
}

/// Rank modulo the prime `p` of a small-integer matrix; a lower bound on
/// the rational rank.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let f = (m[i][c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let sub = (f as u128 * m[r][j] as u128 % p as u128) as u64;
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exact rank of an integer matrix: modular fast path, rational fallback.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let full = rows.len().min(rows.first().map_or(0, Vec::len));
    let fast = rank_mod_p(rows, 2_305_843_009_213_693_951);
    if fast == full {
        return fast;
    }
    let exact: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
        .collect();
    rank(&exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[0, 1, 1]])), 2);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), q(6));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            for row in &a {
                let dot: Q = row.iter().zip(x).map(|(u, v)| u * v).sum();
                assert!(dot.is_zero());
            }
        }
        assert!(kernel(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn modular_rank_matches_exact() {
        let rows = vec![vec![1, -1, 1], vec![1, 1, -1], vec![2, 0, 0]];
        assert_eq!(integer_rank(&rows), 2);
        assert_eq!(rank_mod_p(&rows, 2), 1);
        assert_eq!(integer_rank(&[vec![1, 1], vec![1, -1]]), 2);
    }
}
