//! Exact shattering computations over a consistency oracle.
//!
//! Labellings of an ordered point list are encoded as bit masks: bit `i` is
//! the label of point `i`. Subsets and labellings are scanned in
//! lexicographic order, so the first failure found is reproducible and is
//! reported as a [`Certificate`].

use serde::Serialize;

use crate::classes::{for_each_subset, ConsistencyOracle};
use crate::domain::{FiniteDomain, Labelling, Point};
use crate::error::{Error, Result};
use crate::rational::{binomial, binomial_prefix_sum};

/// Largest point set whose `2^|T|` labellings are enumerated.
pub const MAX_ENUMERATED_POINTS: usize = 22;
/// Largest number of same-size subsets scanned by `vc_dim` and `lvc_dim`.
pub const SUBSET_SCAN_BUDGET: u128 = 1_000_000;

/// A subset of `S` together with a labelling of it that no member realizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subset: Vec<usize>,
    pub labelling: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub class: String,
    pub domain_size: usize,
    pub vc: usize,
    pub lvc: usize,
    pub shattering_number: u128,
    pub growth: u128,
    pub sauer_bound: u128,
    pub is_maximum: bool,
    pub is_shatter_extremal: bool,
    pub lvc_equals_vc: bool,
}

fn check_enumerable(what: &'static str, len: usize) -> Result<()> {
    if len > MAX_ENUMERATED_POINTS {
        return Err(Error::budget(what, len as u128, MAX_ENUMERATED_POINTS as u128));
    }
    Ok(())
}

/// The first labelling (in mask order) of `t` that the class cannot realize.
pub fn unrealized_labelling<C: ConsistencyOracle + ?Sized>(
    class: &C,
    t: &[Point],
) -> Result<Option<Labelling>> {
    check_enumerable("shattering enumeration", t.len())?;
    for mask in 0..1u64 << t.len() {
        let labels = Labelling::from_mask(mask, t.len());
        if !class.consistent(t, labels.bits())? {
            return Ok(Some(labels));
        }
    }
    Ok(None)
}

pub fn is_shattered<C: ConsistencyOracle + ?Sized>(class: &C, t: &[Point]) -> Result<bool> {
    Ok(unrealized_labelling(class, t)?.is_none())
}

fn check_scan(n: usize, k: usize) -> Result<()> {
    let subsets = binomial(n as u64, k as u64);
    if subsets > SUBSET_SCAN_BUDGET {
        return Err(Error::budget("subset scan", subsets, SUBSET_SCAN_BUDGET));
    }
    check_enumerable("shattering enumeration", k)
}

/// Scans the `k`-subsets of `s` and returns the first one accepted by `pick`.
/// When every `k`-subset is alike (`alike`), only the first is tried.
fn scan_subsets<F>(s: &FiniteDomain, k: usize, alike: bool, mut pick: F) -> Result<Option<Vec<usize>>>
where
    F: FnMut(&[Point]) -> Result<bool>,
{
    if alike {
        check_enumerable("shattering enumeration", k)?;
        let first: Vec<usize> = (0..k).collect();
        return Ok(pick(&s.subset(&first))?.then_some(first));
    }
    check_scan(s.len(), k)?;
    let mut found = None;
    let mut failure = None;
    for_each_subset(s.len(), k, |idx| match pick(&s.subset(idx)) {
        Ok(true) => {
            found = Some(idx.to_vec());
            false
        }
        Ok(false) => true,
        Err(e) => {
            failure = Some(e);
            false
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Whether shattering of subsets of `s` depends only on their size: the class
/// sees only the order of points on a line, and `s` lies on one.
fn subsets_alike<C: ConsistencyOracle + ?Sized>(class: &C, s: &FiniteDomain) -> bool {
    class.line_order_invariant() && s.points().iter().all(|p| p.as_real().is_some_and(|x| x.len() == 1))
}

/// `VC_S(C)` together with a lexicographically first shattered set of that size.
pub fn vc_dim_with_witness<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
) -> Result<(usize, Vec<usize>)> {
    let mut best = Vec::new();
    for k in 1..=s.len() {
        // Shattering is downward closed: no shattered k-set means none larger.
        match scan_subsets(s, k, subsets_alike(class, s), |t| is_shattered(class, t))? {
            Some(idx) => best = idx,
            None => return Ok((k - 1, best)),
        }
    }
    Ok((s.len(), best))
}

pub fn vc_dim<C: ConsistencyOracle + ?Sized>(class: &C, s: &FiniteDomain) -> Result<usize> {
    Ok(vc_dim_with_witness(class, s)?.0)
}

/// `LVC_S(C)` and, when it is below `|S|`, the first unshattered subset of
/// size `LVC + 1` with its first unrealized labelling.
pub fn lvc_dim_with_certificate<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
) -> Result<(usize, Option<Certificate>)> {
    for k in 1..=s.len() {
        if let Some(cert) = lvc_at_least(class, s, k)? {
            return Ok((k - 1, Some(cert)));
        }
    }
    Ok((s.len(), None))
}

/// `None` when every `k`-subset of `s` is shattered (so `LVC_S(C) >= k`),
/// otherwise the first failing subset and labelling.
pub fn lvc_at_least<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
    k: usize,
) -> Result<Option<Certificate>> {
    let mut missing = None;
    let failing = scan_subsets(s, k, subsets_alike(class, s), |t| {
        missing = unrealized_labelling(class, t)?;
        Ok(missing.is_some())
    })?;
    Ok(failing.zip(missing).map(|(subset, labels)| Certificate {
        subset,
        labelling: labels.to_string(),
    }))
}

pub fn lvc_dim<C: ConsistencyOracle + ?Sized>(class: &C, s: &FiniteDomain) -> Result<usize> {
    Ok(lvc_dim_with_certificate(class, s)?.0)
}

/// All labellings of `s` realized by the class, as sorted masks.
///
/// Consistency is hereditary, so a depth-first search that abandons every
/// inconsistent prefix visits only realizable partial labellings.
pub fn realized_labellings<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
) -> Result<Vec<u64>> {
    check_enumerable("growth enumeration", s.len())?;
    let points = s.points();
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(points.len());
    extend(class, points, &mut labels, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

fn extend<C: ConsistencyOracle + ?Sized>(
    class: &C,
    points: &[Point],
    labels: &mut Vec<bool>,
    out: &mut Vec<u64>,
) -> Result<()> {
    let depth = labels.len();
    if depth == points.len() {
        out.push(Labelling::new(labels.clone()).to_mask());
        return Ok(());
    }
    // Below the root the prefix is realized by some member, whose own label
    // at the next point extends it; so when `false` fails, `true` holds.
    let mut false_ok = false;
    for b in [false, true] {
        labels.push(b);
        let ok = if b && depth > 0 && !false_ok {
            true
        } else {
            class.consistent(&points[..=depth], labels)?
        };
        if !b {
            false_ok = ok;
        }
        if ok {
            extend(class, points, labels, out)?;
        }
        labels.pop();
    }
    Ok(())
}

/// Subsets of `0..n` shattered by a family of masks, as sorted masks. The
/// family must be sorted and free of duplicates.
pub fn shattered_family(family: &[u64], n: usize) -> Vec<u64> {
    shattered_by_all(vec![family.to_vec()], n)
}

/// Subsets of `0..n` shattered by every family in the list.
///
/// Splits on the top coordinate `x`: with `F0`, `F1` the traces of members of
/// `F` with `x` off and on, `T` is shattered by `F` iff it is shattered by
/// `F0 ∪ F1`, and `T + x` is iff `T` is shattered by both `F0` and `F1`.
/// Each branch toward `x` halves the families, so the recursion stays close
/// to the size of the output.
fn shattered_by_all(mut families: Vec<Vec<u64>>, n: usize) -> Vec<u64> {
    if families.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    families.retain(|f| f.len() != 1 << n);
    if families.is_empty() {
        return (0..1u64 << n).collect();
    }
    if n == 0 || families.iter().any(|f| f.len() == 1) {
        return vec![0];
    }
    families.sort_unstable();
    families.dedup();
    let bit = 1u64 << (n - 1);
    let mut unions = Vec::with_capacity(families.len());
    let mut halves = Vec::with_capacity(2 * families.len());
    for f in &families {
        let split = f.partition_point(|&m| m < bit);
        let (low, high) = f.split_at(split);
        let high: Vec<u64> = high.iter().map(|&m| m & !bit).collect();
        unions.push(merge_union(low, &high));
        halves.push(low.to_vec());
        halves.push(high);
    }
    drop(families);
    let mut out = shattered_by_all(unions, n - 1);
    out.extend(shattered_by_all(halves, n - 1).into_iter().map(|t| t | bit));
    out
}

fn merge_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `(growth, shattering number)` of the class on `s`.
pub fn growth_and_shattering<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
) -> Result<(u128, u128)> {
    let realized = realized_labellings(class, s)?;
    let shattered = shattered_family(&realized, s.len());
    Ok((realized.len() as u128, shattered.len() as u128))
}

/// Full report computed from one enumeration of the realized labellings.
pub fn classify_extremal<C: ConsistencyOracle + ?Sized>(
    class: &C,
    s: &FiniteDomain,
) -> Result<DimensionReport> {
    let realized = realized_labellings(class, s)?;
    Ok(report_from_family(class.describe(), &realized, s.len()))
}

/// Builds a report for an explicit family of masks over `n` points.
pub fn report_from_family(class: String, realized: &[u64], n: usize) -> DimensionReport {
    let shattered = shattered_family(realized, n);
    let vc = shattered.iter().map(|t| t.count_ones() as usize).max().unwrap_or(0);
    let mut per_size = vec![0u128; n + 1];
    for t in &shattered {
        per_size[t.count_ones() as usize] += 1;
    }
    let lvc = (1..=n)
        .find(|&k| per_size[k] < binomial(n as u64, k as u64))
        .map_or(n, |k| k - 1);
    let growth = realized.len() as u128;
    let shattering_number = shattered.len() as u128;
    let sauer_bound = binomial_prefix_sum(n as u64, vc as u64);
    DimensionReport {
        class,
        domain_size: n,
        vc,
        lvc,
        shattering_number,
        growth,
        sauer_bound,
        is_maximum: growth == sauer_bound && !realized.is_empty(),
        is_shatter_extremal: growth == shattering_number,
        lvc_equals_vc: lvc == vc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{ExplicitClass, FunctionClass};

    #[test]
    fn vacuous_and_budget_cases() {
        let c = FunctionClass::IntervalUnion { k: 1 };
        assert!(is_shattered(&c, &[]).unwrap());
        let big = FiniteDomain::line(23);
        assert!(matches!(
            growth_and_shattering(&c, &big),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(growth_and_shattering(&c, &FiniteDomain::line(0)).unwrap(), (1, 1));
    }

    /// Hides `line_order_invariant`, forcing full subset scans.
    struct Plain(FunctionClass);

    impl ConsistencyOracle for Plain {
        fn consistent(&self, points: &[Point], labels: &[bool]) -> Result<bool> {
            self.0.consistent(points, labels)
        }

        fn describe(&self) -> String {
            self.0.describe()
        }
    }

    #[test]
    fn line_shortcut_matches_full_scans() {
        let uneven = FiniteDomain::new(
            [5, -2, 9, 0, 3, -7, 11, 1]
                .iter()
                .map(|&x| Point::Real(vec![crate::rational::q(x)]))
                .collect(),
        )
        .unwrap();
        let classes = (1..=3)
            .map(|k| FunctionClass::IntervalUnion { k })
            .chain((0..=4).map(|m| FunctionClass::Alternating { m }));
        for c in classes {
            for s in [FiniteDomain::line(8), uneven.clone()] {
                let plain = Plain(c.clone());
                assert_eq!(vc_dim_with_witness(&c, &s).unwrap(), vc_dim_with_witness(&plain, &s).unwrap());
                assert_eq!(
                    lvc_dim_with_certificate(&c, &s).unwrap(),
                    lvc_dim_with_certificate(&plain, &s).unwrap()
                );
            }
        }
    }

    #[test]
    fn intervals_on_four_points() {
        let c = FunctionClass::IntervalUnion { k: 1 };
        let s = FiniteDomain::line(4);
        assert_eq!(growth_and_shattering(&c, &s).unwrap(), (11, 11));
        let r = classify_extremal(&c, &s).unwrap();
        assert_eq!((r.vc, r.lvc, r.sauer_bound), (2, 2, 11));
        assert!(r.is_maximum);
    }

    #[test]
    fn symmetric_small() {
        let c = FunctionClass::SymmetricThreshold { n: 5, t: 1 };
        let s = FiniteDomain::indices(5);
        assert_eq!(growth_and_shattering(&c, &s).unwrap().0, 6);
        assert_eq!(vc_dim(&c, &s).unwrap(), 1);
    }

    #[test]
    fn singleton_class_is_maximum() {
        let c = ExplicitClass::new(4, vec![vec![true, false, true, false]]).unwrap();
        let r = classify_extremal(&c, &FiniteDomain::indices(4)).unwrap();
        assert_eq!((r.growth, r.vc, r.shattering_number), (1, 0, 1));
        assert!(r.is_maximum);
    }

    #[test]
    fn certificate_is_first_failure() {
        let c = FunctionClass::IntervalUnion { k: 1 };
        let (lvc, cert) = lvc_dim_with_certificate(&c, &FiniteDomain::line(5)).unwrap();
        assert_eq!(lvc, 2);
        let cert = cert.unwrap();
        assert_eq!(cert.subset, vec![0, 1, 2]);
        assert_eq!(cert.labelling, "101");
    }

    #[test]
    fn shattered_family_of_full_cube() {
        let all: Vec<u64> = (0..8).collect();
        assert_eq!(shattered_family(&all, 3).len(), 8);
        assert_eq!(shattered_family(&[5], 3), vec![0]);
        assert!(shattered_family(&[], 3).is_empty());
        // {00, 11} shatters both singletons but not the pair.
        assert_eq!(shattered_family(&[0, 3], 2), vec![0, 1, 2]);
    }
}
