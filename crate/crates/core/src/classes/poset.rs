use crate::error::{Error, Result};

/// Finite strict partial order, stored transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    // less[i * n + j] <=> i < j
    less: Vec<bool>,
}

impl Poset {
    /// Builds the transitive closure of `pairs` (`(i, j)` meaning `i < j`).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![false; n * n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("pair ({i},{j}) out of range {n}")));
            }
            less[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i * n + k] {
                    for j in 0..n {
                        if less[k * n + j] {
                            less[i * n + j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| less[i * n + i]) {
            return Err(Error::InvalidInput("relation has a cycle".into()));
        }
        Ok(Self { n, less })
    }

    pub fn antichain(n: usize) -> Self {
        Self {
            n,
            less: vec![false; n * n],
        }
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut less = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                less[i * n + j] = true;
            }
        }
        Self { n, less }
    }

    /// Bipartite order on `x + y` elements: `0..x` form X, `x..x+y` form Y,
    /// and each edge `(a, b)` says `a < x + b`.
    pub fn bipartite(x: usize, y: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let pairs: Vec<_> = edges.iter().map(|&(a, b)| (a, x + b)).collect();
        if edges.iter().any(|&(a, b)| a >= x || b >= y) {
            return Err(Error::InvalidInput("bipartite edge out of range".into()));
        }
        Self::from_pairs(x + y, &pairs)
    }

    /// Format: first line `n`, then one `i<j` pair per line (0-indexed).
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty poset file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the element count".into()))?;
        let mut pairs = Vec::new();
        for line in lines {
            let (a, b) = line
                .split_once('<')
                .ok_or_else(|| Error::Parse(format!("expected `i<j`, got {line:?}")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad index in {line:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad index in {line:?}")))?;
            pairs.push((a, b));
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j) in self.covering_pairs() {
            out.push_str(&format!("{i}<{j}\n"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i * self.n + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    /// All pairs `(i, j)` with `i < j`.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter(move |&j| self.less(i, j)).map(move |j| (i, j)))
    }

    /// Pairs `i < j` with nothing strictly between them.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        self.relations()
            .filter(|&(i, j)| !(0..self.n).any(|k| self.less(i, k) && self.less(k, j)))
            .collect()
    }

    /// A linear extension: elements sorted so every `i < j` has `i` first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        // Number of predecessors strictly increases along any chain.
        order.sort_by_key(|&j| (0..self.n).filter(|&i| self.less(i, j)).count());
        order
    }

    pub fn is_antichain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| !self.less(a, b)))
    }

    /// `f` is monotone iff no `x < y` has `f(x) = 1, f(y) = 0`.
    pub fn is_monotone(&self, f: &[bool]) -> bool {
        self.violating_pair(f).is_none()
    }

    pub fn violating_pair(&self, f: &[bool]) -> Option<(usize, usize)> {
        self.relations().find(|&(i, j)| f[i] && !f[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = Poset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert_eq!(p.covering_pairs(), vec![(0, 1), (1, 2)]);
        assert!(Poset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_pairs(2, &[(0, 0)]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let p = Poset::parse("4\n0<1\n# note\n1<3\n2<3\n").unwrap();
        assert_eq!(Poset::parse(&p.to_text()).unwrap(), p);
        assert!(Poset::parse("x").is_err());
        assert!(Poset::parse("2\n0-1").is_err());
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = Poset::from_pairs(5, &[(3, 1), (1, 0), (4, 0), (2, 4)]).unwrap();
        let ext = p.linear_extension();
        let pos: Vec<usize> = (0..5).map(|e| ext.iter().position(|&x| x == e).unwrap()).collect();
        for (i, j) in p.relations() {
            assert!(pos[i] < pos[j]);
        }
    }
}
