//! Feature maps: the moment curve and monomial embeddings.

use num_traits::{One, Zero};

use crate::rational::Q;

/// `(x, x^2, ..., x^n)` for even `n`, `(0, x, ..., x^{n-1})` for odd `n`.
pub fn moment_curve_embed(x: &Q, n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n);
    if n % 2 == 1 {
        out.push(Q::zero());
    }
    let mut pow = x.clone();
    while out.len() < n {
        out.push(pow.clone());
        pow *= x;
    }
    out
}

/// Recovers `x` from a moment-curve point, if the point lies on the curve.
pub fn moment_curve_parameter(p: &[Q]) -> Option<Q> {
    let n = p.len();
    if n == 0 {
        return None;
    }
    let x = if n.is_multiple_of(2) {
        p[0].clone()
    } else if n == 1 {
        Q::zero()
    } else {
        p[1].clone()
    };
    (moment_curve_embed(&x, n) == p).then_some(x)
}

/// Multilinear monomials of degree at most `k` over `n` variables in
/// degree-lexicographic order: by degree, then lexicographically by the
/// sorted index set. Index sets are returned as ascending variable lists.
pub fn multilinear_monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for deg in 1..=k.min(n) {
        let mut combo: Vec<usize> = (0..deg).collect();
        loop {
            out.push(combo.clone());
            // next combination in lexicographic order
            let mut i = deg;
            while i > 0 && combo[i - 1] == n - deg + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..deg {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// All monomials of total degree at most `k` in `n` variables, each a
/// nondecreasing variable list (`[0, 0, 2]` is `x0^2 x2`), degree-lex order.
pub fn real_monomials(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &level {
            let start = m.last().copied().unwrap_or(0);
            for v in start..n {
                let mut m2 = m.clone();
                m2.push(v);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// `psi_k(x) = (x^a)_{|a| <= k}` for `x` in `{+-1}^n`, degree-lex order.
pub fn monomial_embed(x: &[i8], k: usize) -> Vec<i8> {
    debug_assert!(x.iter().all(|&v| v == 1 || v == -1));
    multilinear_monomials(x.len(), k)
        .iter()
        .map(|m| m.iter().map(|&i| x[i]).product())
        .collect()
}

/// Maps bits to signs: `0 -> +1`, `1 -> -1`.
pub fn bits_to_signs(bits: &[bool]) -> Vec<i8> {
    bits.iter().map(|&b| if b { -1 } else { 1 }).collect()
}

/// Evaluates every real monomial of degree `<= k` at `x`.
pub fn real_monomial_embed(x: &[Q], k: usize) -> Vec<Q> {
    real_monomials(x.len(), k)
        .iter()
        .map(|m| m.iter().fold(Q::one(), |acc, &i| acc * &x[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn moment_curve_examples() {
        assert_eq!(moment_curve_embed(&q(3), 2), vec![q(3), q(9)]);
        assert_eq!(moment_curve_embed(&q(2), 3), vec![q(0), q(2), q(4)]);
        assert_eq!(moment_curve_embed(&q(0), 2), vec![q(0), q(0)]);
        assert_eq!(moment_curve_parameter(&[q(0), q(2), q(4)]), Some(q(2)));
        assert_eq!(moment_curve_parameter(&[q(2), q(5)]), None);
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(monomial_embed(&[-1, 1], 2), vec![1, -1, 1, -1]);
        assert_eq!(monomial_embed(&[1, -1, 1, 1, -1], 0), vec![1]);
        assert_eq!(monomial_embed(&[1, 1, -1], 1), vec![1, 1, 1, -1]);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(multilinear_monomials(20, 2).len(), 211);
        assert_eq!(multilinear_monomials(3, 5).len(), 8);
        assert_eq!(
            multilinear_monomials(3, 2),
            vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        // C(n+k, k)
        assert_eq!(real_monomials(3, 2).len(), 10);
        assert_eq!(real_monomials(1, 4).len(), 5);
        assert_eq!(real_monomial_embed(&[q(2)], 3), vec![q(1), q(2), q(4), q(8)]);
    }
}
