//! Verification suites: executable checks of exact identities, oracle
//! agreements and Monte-Carlo behaviour of the constructions.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use num_traits::Zero;
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use vctest_core::classes::{
    for_each_subset, linear_separability, random_arrangement, ConsistencyOracle, ExplicitClass, FunctionClass, Poset,
    PtfDomain,
};
use vctest_core::dimension::{
    classify_extremal, is_shattered, lvc_dim, realized_labellings, report_from_family, vc_dim,
};
use vctest_core::distance::{exact_distance, random_far_fraction};
use vctest_core::domain::{normalize, sample, FiniteDistribution, FiniteDomain, Labelling, Point, Seed};
use vctest_core::feasibility::{Constraint, LinearSystem};
use vctest_core::hardness::{
    balls_in_bins_check, cluster_instance, cube_rank_check, general_position_set, hemisphere_frequency,
    independence_threshold, lp_default_support, lp_hard_instance, min_enclosing_ball, wendel_probability, Side,
    SsdParams, SsdSampler,
};
use vctest_core::rational::{format_rational, q, q_ratio, Q};
use vctest_core::stats::Proportion;
use vctest_core::testers::{
    birthday_sample_size, birthday_ssd, cluster_cover_check, junta_run, lp_feasibility_test, monotone_sample_size, monotone_test,
    one_sided_vc_test, symmetric_sample_size, symmetric_test, SupportSize, TesterConfig,
};

use crate::error::{HarnessError, Result};
use crate::specs::random_cube_points;

/// Suite names accepted by [`run_suite`], in report order.
pub const SUITES: [&str; 15] = [
    "dims",
    "sauer",
    "alternating",
    "maximum",
    "farness",
    "ssd",
    "junta",
    "monotone",
    "symmetric",
    "wendel",
    "cluster",
    "asw",
    "ssd-birthday",
    "lvc-one-sided",
    "lp",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being checked, in words.
    pub fact: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, fact: &str, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            fact: fact.to_string(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let mut line = format!(
                    "{} {}: {} | expected {} | observed {} | {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    self.suite,
                    c.name,
                    c.expected,
                    c.observed,
                    c.fact
                );
                if let (false, Some(reason)) = (c.pass, known_deviation(&c.name)) {
                    line += &format!(" [known deviation: {reason}]");
                }
                line
            })
            .collect()
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s)).collect();
    }
    Ok(vec![run_one(name)?])
}

fn run_one(name: &str) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "dims" => dims()?,
        "sauer" => sauer()?,
        "alternating" => alternating()?,
        "maximum" => maximum()?,
        "farness" => farness()?,
        "ssd" => ssd()?,
        "junta" => junta()?,
        "monotone" => monotone()?,
        "symmetric" => symmetric()?,
        "wendel" => wendel()?,
        "cluster" => cluster()?,
        "asw" => asw()?,
        "ssd-birthday" => ssd_birthday()?,
        "lvc-one-sided" => lvc_one_sided()?,
        "lp" => lp()?,
        other => return Err(HarnessError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

const ROOT: Seed = Seed(0x5eed_2024);

fn suite_seed(suite: &str) -> Seed {
    let h = suite.bytes().fold(0u64, |acc, b| acc.wrapping_mul(131).wrapping_add(b as u64));
    ROOT.derive(h)
}

fn wilson_low(successes: usize, trials: usize) -> f64 {
    Proportion::new(successes, trials).wilson_low()
}

fn rate_text(successes: usize, trials: usize) -> String {
    let p = Proportion::new(successes, trials);
    let (lo, hi) = p.wilson();
    format!("{successes}/{trials} = {:.4} (95% CI {lo:.4}..{hi:.4})", p.rate())
}

/// Counts seeds in `0..trials` for which `event` holds, in parallel.
fn count_par(trials: usize, event: impl Fn(usize) -> Result<bool> + Sync + Send) -> Result<usize> {
    let hits: Vec<Result<bool>> = (0..trials).into_par_iter().map(event).collect();
    let mut n = 0;
    for h in hits {
        n += h? as usize;
    }
    Ok(n)
}

// ---------------------------------------------------------------- dims

/// A class on a domain with the dimensions it must have.
pub struct DimCase {
    pub label: String,
    pub fact: &'static str,
    pub class: FunctionClass,
    pub domain: FiniteDomain,
    pub expected: Expected,
}

pub enum Expected {
    /// `vc = lvc = d`.
    Both(usize),
    /// `lvc >= d`.
    LvcAtLeast(usize),
}

/// The class/domain pairs of the exact dimension identities.
pub fn dimension_cases() -> Result<Vec<DimCase>> {
    let mut cases = Vec::new();
    for k in 1..=3 {
        cases.push(DimCase {
            label: format!("intervals k={k} on 10 colinear points"),
            fact: "unions of k intervals shatter every 2k points of the line and no 2k+1",
            class: FunctionClass::IntervalUnion { k },
            domain: FiniteDomain::line(10),
            expected: Expected::Both(2 * k),
        });
    }
    for n in 2..=3 {
        cases.push(DimCase {
            label: format!("halfspaces in R^{n} on 8 moment-curve points"),
            fact: "halfspaces in R^n shatter every n+1 points in general position and no n+2",
            class: FunctionClass::Halfspace { n },
            domain: general_position_set(n, 8)?,
            expected: Expected::Both(n + 1),
        });
    }
    for (n, k) in [(2, 1), (2, 2), (4, 1)] {
        cases.push(DimCase {
            label: format!("{INTERSECTION_DIMS_PREFIX}{k} halfspaces in R^{n} on {} moment-curve points", 2 * n * k + 1),
            fact: "for even n, intersections of k halfspaces on the moment curve have LVC = VC = nk",
            class: FunctionClass::HalfspaceIntersection { n, k },
            domain: general_position_set(n, 2 * n * k + 1)?,
            expected: Expected::Both(n * k),
        });
    }
    for n in 4..=6 {
        for k in 1..=4 {
            cases.push(DimCase {
                label: format!("decision trees with {k} nodes on 12 random points of {{0,1}}^{n}"),
                fact: "any k distinct points of the cube are shattered by decision trees of size k",
                class: FunctionClass::BooleanDecisionTree { n, k },
                domain: random_cube_points(n, 12, suite_seed("dims").derive(n as u64))?,
                expected: Expected::LvcAtLeast(k.min(12)),
            });
        }
    }
    for n in [10, 15] {
        cases.push(DimCase {
            label: format!("at most n/5 ones on [{n}]"),
            fact: "functions on [n] with at most n/5 ones have LVC = VC = n/5",
            class: FunctionClass::symmetric_fifth(n),
            domain: FiniteDomain::indices(n),
            expected: Expected::Both(n / 5),
        });
    }
    cases.push(DimCase {
        label: "monotone functions on an antichain of 6".into(),
        fact: "every function on an antichain is monotone, so the antichain is shattered",
        class: FunctionClass::monotone(Poset::antichain(6)),
        domain: FiniteDomain::poset_elements(6),
        expected: Expected::Both(6),
    });
    Ok(cases)
}

fn dims() -> Result<Vec<Check>> {
    let cases = dimension_cases()?;
    let results: Vec<Result<Check>> = cases
        .par_iter()
        .map(|c| {
            let lvc = lvc_dim(&c.class, &c.domain)?;
            Ok(match c.expected {
                Expected::Both(d) => {
                    let vc = vc_dim(&c.class, &c.domain)?;
                    Check::new(
                        &c.label,
                        c.fact,
                        format!("vc = lvc = {d}"),
                        format!("vc = {vc}, lvc = {lvc}"),
                        vc == d && lvc == d,
                    )
                }
                Expected::LvcAtLeast(d) => {
                    Check::new(&c.label, c.fact, format!("lvc >= {d}"), format!("lvc = {lvc}"), lvc >= d)
                }
            })
        })
        .collect();
    let mut checks = results.into_iter().collect::<Result<Vec<_>>>()?;
    for n in 2..=3 {
        let s = general_position_set(n, 8)?;
        let class = FunctionClass::Halfspace { n };
        let mut shattered = 0;
        let mut err = None;
        for_each_subset(s.len(), n + 2, |sub| match is_shattered(&class, &s.subset(sub)) {
            Ok(true) => {
                shattered += 1;
                true
            }
            Ok(false) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        checks.push(Check::new(
            format!("no {}-subset of 8 moment-curve points shattered by halfspaces in R^{n}", n + 2),
            "no set of n+2 points is shattered by halfspaces in R^n",
            "0 shattered subsets",
            format!("{shattered} shattered subsets"),
            shattered == 0,
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------- sauer

fn distinct_ints(rng: &mut ChaCha8Rng, size: usize, lo: i64, hi: i64) -> Vec<i64> {
    let picks = index::sample(rng, (hi - lo + 1) as usize, size);
    picks.into_iter().map(|v| lo + v as i64).collect()
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(n, &pairs).expect("pairs i < j are acyclic")
}

/// Random `(class, S)` draws of one family for the inequality-chain check.
fn sauer_instance(family: usize, rng: &mut ChaCha8Rng) -> Result<(FunctionClass, FiniteDomain)> {
    let size = rng.random_range(1..=12usize);
    let line = |rng: &mut ChaCha8Rng| -> Result<FiniteDomain> {
        let xs = distinct_ints(rng, size, -60, 60);
        Ok(FiniteDomain::new(xs.into_iter().map(|x| Point::Real(vec![q(x)])).collect())?)
    };
    Ok(match family {
        0 => (FunctionClass::IntervalUnion { k: rng.random_range(1..=3) }, line(rng)?),
        1 => (FunctionClass::Alternating { m: rng.random_range(0..=4) }, line(rng)?),
        2 | 3 => {
            let n = family;
            let cells = index::sample(rng, 41usize.pow(n as u32), size);
            let points = cells
                .into_iter()
                .map(|mut c| {
                    let mut coords = Vec::with_capacity(n);
                    for _ in 0..n {
                        coords.push(q((c % 41) as i64 - 20));
                        c /= 41;
                    }
                    Point::Real(coords)
                })
                .collect();
            (FunctionClass::Halfspace { n }, FiniteDomain::new(points)?)
        }
        4 => {
            let ts = distinct_ints(rng, size, 1, 40);
            let points = ts.into_iter().map(|t| Point::Real(vec![q(t), q(t * t)])).collect();
            (
                FunctionClass::HalfspaceIntersection { n: 2, k: rng.random_range(1..=2) },
                FiniteDomain::new(points)?,
            )
        }
        5 => (FunctionClass::Ptf { n: 1, k: 2, domain: PtfDomain::Real }, line(rng)?),
        6 => {
            let seed = Seed(rng.random());
            (
                FunctionClass::Ptf { n: 3, k: 2, domain: PtfDomain::Cube },
                random_cube_points(3, size.min(8), seed)?,
            )
        }
        7 => {
            let ts = distinct_ints(rng, size, -30, 30);
            let points = ts.into_iter().map(|t| Point::Real(vec![q(t), Q::zero()])).collect();
            (
                FunctionClass::RealDecisionTree { n: 2, k: rng.random_range(1..=3) },
                FiniteDomain::new(points)?,
            )
        }
        8 => {
            let seed = Seed(rng.random());
            (
                FunctionClass::BooleanDecisionTree { n: 4, k: rng.random_range(1..=2) },
                random_cube_points(4, size, seed)?,
            )
        }
        9 => {
            let seed = Seed(rng.random());
            (
                FunctionClass::Junta { n: 4, k: rng.random_range(1..=2) },
                random_cube_points(4, size, seed)?,
            )
        }
        10 => {
            let poset = random_poset(rng, 12, 0.2);
            let elems: Vec<Point> = index::sample(rng, 12, size).into_iter().map(Point::Poset).collect();
            (FunctionClass::monotone(poset), FiniteDomain::new(elems)?)
        }
        11 => {
            let elems: Vec<Point> = index::sample(rng, 12, size).into_iter().map(Point::Index).collect();
            (
                FunctionClass::SymmetricThreshold { n: 12, t: rng.random_range(0..=6) },
                FiniteDomain::new(elems)?,
            )
        }
        _ => {
            let class = random_arrangement(6, 2, Seed(rng.random()))?;
            let elems: Vec<Point> = index::sample(rng, 6, size.min(6)).into_iter().map(Point::Index).collect();
            (class, FiniteDomain::new(elems)?)
        }
    })
}

const SAUER_FAMILIES: [&str; 13] = [
    "intervals",
    "alternating",
    "halfspaces in R^2",
    "halfspaces in R^3",
    "halfspace intersections on the parabola",
    "quadratic threshold functions on the line",
    "quadratic threshold functions on {0,1}^3",
    "real decision trees",
    "boolean decision trees",
    "2-juntas on {0,1}^4",
    "monotone functions on random posets",
    "at most t ones",
    "6-line arrangements in the plane",
];

fn sauer() -> Result<Vec<Check>> {
    SAUER_FAMILIES
        .par_iter()
        .enumerate()
        .map(|(family, name)| {
            let mut violations = 0;
            let mut worst = String::new();
            for trial in 0..100u64 {
                let mut rng = suite_seed("sauer").derive(family as u64).derive(trial).rng();
                let (class, s) = sauer_instance(family, &mut rng)?;
                let realized = realized_labellings(&class, &s)?;
                let r = report_from_family(class.describe(), &realized, s.len());
                if !(r.growth <= r.shattering_number && r.shattering_number <= r.sauer_bound) {
                    violations += 1;
                    worst = format!(" (e.g. {}: {} > {} or > {})", class, r.growth, r.shattering_number, r.sauer_bound);
                }
            }
            Ok(Check::new(
                format!("{name}, 100 random sets of at most 12 points"),
                "growth <= number of shattered subsets <= sum of C(|S|, i) for i <= VC",
                "0 violations",
                format!("{violations} violations{worst}"),
                violations == 0,
            ))
        })
        .collect()
}

// ---------------------------------------------------------------- alternating

/// Whether the labelled points are cut out by an intersection of at most
/// `k` halfspaces: the negatives split into at most `k` groups, each
/// strictly separable from all positives. Exhaustive over set partitions.
pub fn intersection_by_partition(points: &[Vec<Q>], labels: &[bool], k: usize) -> bool {
    let positives: Vec<usize> = (0..points.len()).filter(|&i| labels[i]).collect();
    let negatives: Vec<usize> = (0..points.len()).filter(|&i| !labels[i]).collect();
    if negatives.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut cache: HashMap<u64, bool> = HashMap::new();
    let mut separable = |group: u64| -> bool {
        *cache.entry(group).or_insert_with(|| {
            let mut pts = Vec::new();
            let mut lab = Vec::new();
            for &i in &positives {
                pts.push(points[i].clone());
                lab.push(true);
            }
            for (b, &i) in negatives.iter().enumerate() {
                if group >> b & 1 == 1 {
                    pts.push(points[i].clone());
                    lab.push(false);
                }
            }
            linear_separability(&pts, &lab)
        })
    };
    fn assign(next: usize, total: usize, groups: &mut Vec<u64>, k: usize, sep: &mut dyn FnMut(u64) -> bool) -> bool {
        if next == total {
            return true;
        }
        for g in 0..groups.len() {
            let grown = groups[g] | 1 << next;
            if sep(grown) {
                let old = groups[g];
                groups[g] = grown;
                if assign(next + 1, total, groups, k, sep) {
                    return true;
                }
                groups[g] = old;
            }
        }
        if groups.len() < k && sep(1 << next) {
            groups.push(1 << next);
            if assign(next + 1, total, groups, k, sep) {
                return true;
            }
            groups.pop();
        }
        false
    }
    assign(0, negatives.len(), &mut Vec::new(), k, &mut separable)
}

fn alternating() -> Result<Vec<Check>> {
    let line = FiniteDomain::line(9);
    let curve = general_position_set(2, 9)?;
    let reals: Vec<Vec<Q>> = curve.points().iter().map(|p| p.as_real().expect("real").to_vec()).collect();
    (1..=3usize)
        .into_par_iter()
        .map(|k| {
            let alternating: BTreeSet<u64> =
                realized_labellings(&FunctionClass::Alternating { m: 2 * k }, &line)?.into_iter().collect();
            let brute: BTreeSet<u64> = (0..1u64 << 9)
                .filter(|&mask| {
                    let labels = Labelling::from_mask(mask, 9);
                    intersection_by_partition(&reals, labels.bits(), k)
                })
                .collect();
            let oracle: BTreeSet<u64> = realized_labellings(&FunctionClass::HalfspaceIntersection { n: 2, k }, &curve)?
                .into_iter()
                .collect();
            Ok(Check::new(
                format!("intersections of {k} halfspaces on 9 parabola points vs {} alternations", 2 * k),
                "intersections of k functions with at most m alternations are the functions with at most mk alternations",
                format!("identical sets ({} labellings)", alternating.len()),
                format!(
                    "{} by partition search, {} by the class oracle, equal: {}",
                    brute.len(),
                    oracle.len(),
                    brute == alternating && oracle == alternating
                ),
                brute == alternating && oracle == alternating,
            ))
        })
        .collect()
}

// ---------------------------------------------------------------- maximum

/// Random families over `[n]` of several shapes, some maximum by
/// construction and most not.
fn random_family(rng: &mut ChaCha8Rng) -> (usize, Vec<u64>) {
    let n = rng.random_range(2..=6usize);
    let all = 1u64 << n;
    let mut family: Vec<u64> = match rng.random_range(0..4) {
        0 => {
            let p = rng.random_range(0.1..0.9);
            (0..all).filter(|_| rng.random_bool(p)).collect()
        }
        1 => {
            let d = rng.random_range(0..=n as u32);
            (0..all).filter(|m| m.count_ones() <= d).collect()
        }
        2 => {
            let d = rng.random_range(0..=n as u32);
            (0..all).filter(|m| m.count_ones() <= d && rng.random_bool(0.8)).collect()
        }
        _ => {
            let k = rng.random_range(1..=2usize);
            (0..all)
                .filter(|&m| {
                    let bits: Vec<bool> = (0..n).map(|b| m >> b & 1 == 1).collect();
                    let blocks = bits.iter().enumerate().filter(|&(i, &b)| b && (i == 0 || !bits[i - 1])).count();
                    blocks <= k
                })
                .collect()
        }
    };
    if family.is_empty() {
        family.push(0);
    }
    family.sort_unstable();
    (n, family)
}

fn maximum() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let s10 = classify_extremal(&FunctionClass::symmetric_fifth(10), &FiniteDomain::indices(10))?;
    checks.push(Check::new(
        "at most 2 ones on [10]",
        "the class of functions with at most n/5 ones is maximum on [n]",
        "is_maximum",
        format!("growth {} vs Sauer bound {}", s10.growth, s10.sauer_bound),
        s10.is_maximum,
    ));
    let arrangement = random_arrangement(6, 2, suite_seed("maximum"))?;
    let r = classify_extremal(&arrangement, &FiniteDomain::indices(6))?;
    checks.push(Check::new(
        "cells of 6 lines in general position in the plane",
        "sign vectors of the cells of a simple arrangement form a maximum class",
        "is_maximum",
        format!("growth {} vs Sauer bound {}, vc {}", r.growth, r.sauer_bound, r.vc),
        r.is_maximum,
    ));
    let mut mismatches = 0;
    let mut maxima = 0;
    for trial in 0..100u64 {
        let mut rng = suite_seed("maximum").derive(trial + 1).rng();
        let (n, family) = random_family(&mut rng);
        let members: Vec<Vec<bool>> = family.iter().map(|&m| Labelling::from_mask(m, n).0).collect();
        let class = ExplicitClass::new(n, members)?;
        let r = report_from_family(class.describe(), &family, n);
        maxima += r.is_maximum as usize;
        if r.is_maximum != (r.is_shatter_extremal && r.lvc_equals_vc) {
            mismatches += 1;
        }
    }
    checks.push(Check::new(
        "100 random classes on at most 6 points",
        "a class is maximum iff it is shatter-extremal and its LVC equals its VC",
        "0 mismatches",
        format!("{mismatches} mismatches ({maxima} maximum classes)"),
        mismatches == 0,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------- farness

fn farness() -> Result<Vec<Check>> {
    let class = FunctionClass::IntervalUnion { k: 2 };
    let eps = q_ratio(1, 20);
    let seed = suite_seed("farness");
    let big = random_far_fraction(&class, &FiniteDomain::line(16), &eps, 2000, seed.derive(16))?;
    let small = random_far_fraction(&class, &FiniteDomain::line(8), &eps, 2000, seed.derive(8))?;
    let p16 = Proportion::new(big.far, big.trials);
    let p8 = Proportion::new(small.far, small.trials);
    Ok(vec![
        Check::new(
            "unions of 2 intervals, 16 uniform points, eps = 1/20",
            "random labellings of a set much larger than the VC dimension are far from the class",
            "far fraction >= 0.9",
            rate_text(big.far, big.trials),
            big.far_fraction >= 0.9,
        ),
        Check::new(
            "far fraction grows from 8 to 16 points",
            "the fraction of far labellings increases with |T| / VC",
            "upper bound at 16 >= lower bound at 8",
            format!("{} at 16 vs {} at 8", rate_text(big.far, big.trials), rate_text(small.far, small.trials)),
            p16.wilson_high() >= p8.wilson_low(),
        ),
    ])
}

// ---------------------------------------------------------------- ssd

fn ssd() -> Result<Vec<Check>> {
    let class = FunctionClass::IntervalUnion { k: 2 };
    let s = FiniteDomain::line(20);
    let params = SsdParams::new(20, q_ratio(1, 5), q_ratio(4, 5), q_ratio(1, 10), 4)?;
    let eps = q_ratio(1, 20);
    let seed = suite_seed("ssd");
    let yes = SsdSampler::new(&class, &s, Side::Yes, &params)?;
    let no = SsdSampler::new(&class, &s, Side::No, &params)?;
    let zero = count_par(200, |t| {
        let inst = yes.draw(seed.derive(0).derive(t as u64))?;
        Ok(exact_distance(&inst.labelling, &class, &s, &inst.distribution)?.is_zero())
    })?;
    let far = count_par(200, |t| {
        let inst = no.draw(seed.derive(1).derive(t as u64))?;
        Ok(exact_distance(&inst.labelling, &class, &s, &inst.distribution)? >= eps)
    })?;
    Ok(vec![
        Check::new(
            "yes side: uniform on 4 of 20 colinear points, random labels",
            "on a support no larger than the LVC dimension every labelling is realized",
            "distance 0 on 200/200 seeds",
            format!("{zero}/200"),
            zero == 200,
        ),
        Check::new(
            "no side: uniform on 16 of 20 colinear points, random labels",
            "on a support of 4 VC points a random labelling is eps-far with probability at least 9/10",
            "distance >= 1/20 on >= 85% of 200 seeds",
            rate_text(far, 200),
            far as f64 >= 0.85 * 200.0,
        ),
    ])
}

// ---------------------------------------------------------------- junta

fn product_distribution(n: usize, rng: &mut ChaCha8Rng) -> Result<FiniteDistribution> {
    let ps: Vec<Q> = (0..n).map(|_| q_ratio(rng.random_range(1..=9), 10)).collect();
    let one = q(1);
    let weights = (0..1usize << n)
        .map(|v| {
            (0..n).fold(one.clone(), |acc, b| {
                if v >> b & 1 == 1 {
                    acc * &ps[b]
                } else {
                    acc * (&one - &ps[b])
                }
            })
        })
        .collect();
    Ok(FiniteDistribution::new(weights)?)
}

fn cube_index_of(p: &Point) -> usize {
    p.as_cube()
        .expect("cube point")
        .iter()
        .enumerate()
        .fold(0, |acc, (b, &x)| acc | (x as usize) << b)
}

fn junta() -> Result<Vec<Check>> {
    let (n, k) = (8usize, 2usize);
    let class = FunctionClass::Junta { n, k };
    let cube = FiniteDomain::full_cube(n);
    let seed = suite_seed("junta");
    let rejected = count_par(500, |t| {
        let mut rng = seed.derive(0).derive(t as u64).rng();
        let dist = product_distribution(n, &mut rng)?;
        let coords = index::sample(&mut rng, n, k).into_vec();
        let table: Vec<bool> = (0..1 << k).map(|_| rng.random_bool(0.5)).collect();
        let bits: Vec<bool> = cube
            .points()
            .iter()
            .map(|p| {
                let x = p.as_cube().expect("cube point");
                table[coords.iter().enumerate().fold(0, |acc, (b, &c)| acc | (x[c] as usize) << b)]
            })
            .collect();
        let cfg = TesterConfig::new(0.1, seed.derive(1).derive(t as u64))?;
        Ok(!junta_run(n, k, &cube, &dist, &Labelling::new(bits), &cfg)?.accept)
    })?;
    let eps = q_ratio(1, 10);
    let outcomes: Vec<Result<(bool, bool)>> = (0..200usize)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive(2).derive(t as u64).rng();
            let support = random_cube_points(n, 14, Seed(rng.random()))?;
            let mut weights = vec![Q::zero(); 1 << n];
            for p in support.points() {
                weights[cube_index_of(p)] = q(rng.random_range(1..=10));
            }
            let dist = normalize(&weights)?;
            for _ in 0..100 {
                let f = Labelling::new((0..1 << n).map(|_| rng.random_bool(0.5)).collect());
                if exact_distance(&f, &class, &cube, &dist)? > eps {
                    let cfg = TesterConfig::new(0.1, seed.derive(3).derive(t as u64))?;
                    return Ok((true, !junta_run(n, k, &cube, &dist, &f, &cfg)?.accept));
                }
            }
            Ok((false, false))
        })
        .collect();
    let mut far = 0;
    let mut detected = 0;
    for o in outcomes {
        let (f, d) = o?;
        far += f as usize;
        detected += d as usize;
    }
    Ok(vec![
        Check::new(
            "random 2-juntas on {0,1}^8 under random product distributions",
            "the junta tester is one-sided",
            "0 rejections in 500",
            format!("{rejected} rejections"),
            rejected == 0,
        ),
        Check::new(
            "eps-far functions on 14-point supports, eps = 0.1, default sample sizes",
            "the junta tester rejects eps-far functions with probability at least 2/3",
            "200 verified-far instances, rejection lower bound >= 2/3",
            format!("{far} far instances; rejected {}", rate_text(detected, far)),
            far == 200 && wilson_low(detected, far) >= 2.0 / 3.0,
        ),
    ])
}

// ---------------------------------------------------------------- monotone

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Result<FiniteDistribution> {
    let mut w: Vec<Q> = (0..n).map(|_| q(rng.random_range(0..=5))).collect();
    if w.iter().all(Zero::is_zero) {
        w[0] = q(1);
    }
    Ok(normalize(&w)?)
}

fn random_up_set(rng: &mut ChaCha8Rng, poset: &Poset) -> Vec<bool> {
    let n = poset.len();
    let generators: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.3)).collect();
    (0..n)
        .map(|x| generators.iter().any(|&g| g == x || poset.less(g, x)))
        .collect()
}

fn monotone() -> Result<Vec<Check>> {
    let seed = suite_seed("monotone");
    let rejected = count_par(500, |t| {
        let mut rng = seed.derive(0).derive(t as u64).rng();
        let n = rng.random_range(1..=10);
        let poset = random_poset(&mut rng, n, 0.3);
        let f = Labelling::new(random_up_set(&mut rng, &poset));
        let dist = random_weights(&mut rng, n)?;
        let cfg = TesterConfig::new(0.1, seed.derive(1).derive(t as u64))?;
        Ok(!monotone_test(&poset, &dist, &f, &cfg)?.accept)
    })?;
    let sandwich: Vec<Result<(bool, bool)>> = (0..200usize)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive(2).derive(t as u64).rng();
            let n = rng.random_range(1..=10);
            let poset = random_poset(&mut rng, n, 0.3);
            let f = if rng.random_bool(0.25) {
                Labelling::new(random_up_set(&mut rng, &poset))
            } else {
                Labelling::new((0..n).map(|_| rng.random_bool(0.5)).collect())
            };
            let dist = random_weights(&mut rng, n)?;
            let (bip, qd, g) = vctest_core::testers::bipartite_reduce(&poset, &dist, &f)?;
            let d_p = exact_distance(&f, &FunctionClass::monotone(poset.clone()), &FiniteDomain::poset_elements(n), &dist)?;
            let d_b = exact_distance(&g, &FunctionClass::monotone(bip.clone()), &FiniteDomain::poset_elements(2 * n), &qd)?;
            let bounds = &d_b * q(2) >= d_p && d_b <= d_p;
            let preserved = poset.is_monotone(f.bits()) == bip.is_monotone(g.bits());
            Ok((bounds, preserved))
        })
        .collect();
    let mut bound_ok = 0;
    let mut pres_ok = 0;
    for s in sandwich {
        let (b, p) = s?;
        bound_ok += b as usize;
        pres_ok += p as usize;
    }
    let (n, eps) = (64usize, 0.2);
    let m = monotone_sample_size(n, eps);
    let low = (eps * n as f64).floor() as usize + 1;
    let chain = Poset::chain(n);
    let f = Labelling::new((0..n).map(|i| i < low).collect());
    let uniform = FiniteDistribution::uniform(n);
    let far = exact_distance(&f, &FunctionClass::monotone(chain.clone()), &FiniteDomain::poset_elements(n), &uniform)?;
    let detected = count_par(200, |t| {
        let cfg = TesterConfig::new(eps, seed.derive(3).derive(t as u64))?;
        Ok(!monotone_test(&chain, &uniform, &f, &cfg)?.accept)
    })?;
    Ok(vec![
        Check::new(
            "monotone functions on random posets of at most 10 elements",
            "the monotonicity tester is one-sided",
            "0 rejections in 500",
            format!("{rejected} rejections"),
            rejected == 0,
        ),
        Check::new(
            "bipartite reduction distance on 200 random (P, D, f)",
            "the distance to monotone on the bipartite double cover is between half the original and the original",
            "200/200 within bounds",
            format!("{bound_ok}/200"),
            bound_ok == 200,
        ),
        Check::new(
            "bipartite reduction preserves monotonicity",
            "f is monotone on P iff its copy is monotone on the double cover",
            "200/200",
            format!("{pres_ok}/200"),
            pres_ok == 200,
        ),
        Check::new(
            format!("chain of {n}, ones on the lowest {low}, eps = {eps}, m = {m}"),
            "the monotonicity tester rejects eps-far functions with probability at least 2/3",
            "distance > eps and rejection lower bound >= 2/3",
            format!("distance {}; rejected {}", format_rational(&far), rate_text(detected, 200)),
            far > q_ratio(1, 5) && wilson_low(detected, 200) >= 2.0 / 3.0,
        ),
    ])
}

// ---------------------------------------------------------------- symmetric

fn symmetric() -> Result<Vec<Check>> {
    let (n, eps) = (1000usize, 0.2);
    let m = symmetric_sample_size(eps);
    let seed = suite_seed("symmetric");
    let run = |ones: usize, stream: u64| {
        count_par(300, move |t| {
            let cfg = TesterConfig::new(eps, seed.derive(stream).derive(t as u64))?;
            Ok(symmetric_test(n, |i| i < ones, &cfg)?.accept)
        })
    };
    let acc_yes = run(n / 5, 0)?;
    let acc_no = run(2 * n / 5, 1)?;
    Ok(vec![
        Check::new(
            format!("exactly n/5 ones, n = {n}, eps = {eps}, m = {m}"),
            "the count-threshold tester accepts members with probability at least 2/3",
            "acceptance lower bound >= 2/3",
            rate_text(acc_yes, 300),
            wilson_low(acc_yes, 300) >= 2.0 / 3.0,
        ),
        Check::new(
            format!("2n/5 ones, n = {n}, eps = {eps}, m = {m}"),
            "the count-threshold tester rejects far functions with probability at least 2/3",
            "rejection lower bound >= 2/3",
            rate_text(300 - acc_no, 300),
            wilson_low(300 - acc_no, 300) >= 2.0 / 3.0,
        ),
    ])
}

// ---------------------------------------------------------------- wendel

fn wendel() -> Result<Vec<Check>> {
    let exact = wendel_probability(6, 3)?;
    let mut checks = vec![Check::new(
        "6 points on the sphere in R^3",
        "t uniform points on the sphere in R^n lie in a common hemisphere with probability 2^-(t-1) sum_{k<n} C(t-1, k)",
        "1/2",
        format_rational(&exact),
        exact == q_ratio(1, 2),
    )];
    for (t, n) in [(3usize, 2usize), (6, 3)] {
        let p = wendel_probability(t, n)?;
        let pf = vctest_core::rational::q_to_f64(&p);
        let freq = hemisphere_frequency(t, n, 100_000, suite_seed("wendel").derive((t * 10 + n) as u64));
        checks.push(Check::new(
            format!("hemisphere frequency, t = {t}, n = {n}, 100000 trials"),
            "the simulated hemisphere probability matches the closed form",
            format!("within 0.01 of {}", format_rational(&p)),
            format!("{freq:.4}"),
            (freq - pf).abs() <= 0.01,
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------- cluster

/// Start of the dims check names for halfspace intersections.
pub const INTERSECTION_DIMS_PREFIX: &str = "intersections of k = ";

/// Checks whose stated expectation is known not to hold, with the reason.
/// They are still run and reported as failures.
pub fn known_deviation(check: &str) -> Option<&'static str> {
    if check == CLUSTER_YES_CHECK {
        Some("at eta = 0.05, 15 near-orthogonal points of norm 1 + eta need an enclosing radius near 1.014")
    } else if check.starts_with(INTERSECTION_DIMS_PREFIX) {
        Some("at most m alternations shatter any m + 1 points, so the dimension is nk + 1, as the partition brute force confirms")
    } else {
        None
    }
}

/// Check name of the yes-side cover rate, which stays below its threshold at
/// eta = 0.05.
pub const CLUSTER_YES_CHECK: &str = "yes side: 15 points of one sphere, covered by one unit ball";

fn cluster() -> Result<Vec<Check>> {
    let (n, k, eta) = (30usize, 1usize, 0.05);
    let seed = suite_seed("cluster");
    let covered = count_par(500, |t| {
        let inst = cluster_instance(n, k, eta, 15, Side::Yes, seed.derive(0).derive(t as u64))?;
        Ok(cluster_cover_check(&inst.points, 1)?)
    })?;
    let spread = count_par(500, |t| {
        let inst = cluster_instance(n, k, eta, 60, Side::No, seed.derive(1).derive(t as u64))?;
        Ok(min_enclosing_ball(&inst.points)?.radius > 1.0)
    })?;
    let (over, under) = balls_in_bins_check(4.0, 30, 4, 0.5, 400, seed.derive(2))?;
    Ok(vec![
        Check::new(
            CLUSTER_YES_CHECK,
            "few points of a sphere of radius 1 + eta fit in a unit ball",
            ">= 85% of 500 seeds",
            rate_text(covered, 500),
            covered as f64 >= 0.85 * 500.0,
        ),
        Check::new(
            "no side: 60 points of one sphere, enclosing radius above 1",
            "many points of a sphere of radius 1 + eta need a ball of radius above 1",
            ">= 95% of 500 seeds",
            rate_text(spread, 500),
            spread as f64 >= 0.95 * 500.0,
        ),
        Check::new(
            "balls in bins, Cload = 4, k = 4, n = 30, delta = 1/2",
            "every bin load lies within (1 +- delta) Cload n with high probability",
            "both events >= 0.85 over 400 trials",
            format!("max load ok {over:.4}, min load ok {under:.4}"),
            over >= 0.85 && under >= 0.85,
        ),
    ])
}

// ---------------------------------------------------------------- asw

fn asw() -> Result<Vec<Check>> {
    let threshold = independence_threshold(20, 2, 4);
    let r = cube_rank_check(20, 2, threshold as usize, 4, 400, suite_seed("asw"))?;
    Ok(vec![Check::new(
        format!("{} random points of {{-1,1}}^20, degree-2 monomial images", r.m),
        "below the threshold size, the monomial images of random cube points are independent with probability >= 1 - 2^-t",
        format!("m = 37 and full-rank fraction >= 0.85 (bound {:.4})", r.bound),
        format!("m = {}, fraction {:.4} ({}/{})", r.m, r.fraction, r.full_rank, r.trials),
        r.m == 37 && r.fraction >= 0.85,
    )])
}

// ---------------------------------------------------------------- ssd-birthday

fn ssd_birthday() -> Result<Vec<Check>> {
    let d = 400usize;
    let m = birthday_sample_size(d);
    let seed = suite_seed("ssd-birthday");
    let run = |support: usize, want: SupportSize, stream: u64| {
        count_par(300, move |t| {
            let mut rng = seed.derive(stream).derive(t as u64).rng();
            let universe = 10 * d;
            let chosen = index::sample(&mut rng, universe, support).into_vec();
            let draws = sample(&FiniteDistribution::uniform(support), m, Seed(rng.random()));
            let samples: Vec<usize> = draws.into_iter().map(|i| chosen[i]).collect();
            Ok(birthday_ssd(&samples, d).decision == want)
        })
    };
    let small = run(d, SupportSize::Small, 0)?;
    let large = run(3 * d, SupportSize::Large, 1)?;
    Ok(vec![
        Check::new(
            format!("uniform on {d} elements, m = {m}"),
            "O(sqrt d) samples distinguish support size d from 3d by counting collisions",
            "correct lower bound >= 2/3",
            rate_text(small, 300),
            wilson_low(small, 300) >= 2.0 / 3.0,
        ),
        Check::new(
            format!("uniform on {} elements, m = {m}", 3 * d),
            "O(sqrt d) samples distinguish support size d from 3d by counting collisions",
            "correct lower bound >= 2/3",
            rate_text(large, 300),
            wilson_low(large, 300) >= 2.0 / 3.0,
        ),
    ])
}

// ---------------------------------------------------------------- lvc-one-sided

fn lvc_one_sided() -> Result<Vec<Check>> {
    let cases = dimension_cases()?;
    cases
        .par_iter()
        .map(|c| {
            let lvc = lvc_dim(&c.class, &c.domain)?;
            let mut tested = 0u64;
            let mut rejected = 0u64;
            let mut err = None;
            for size in 0..=lvc {
                for_each_subset(c.domain.len(), size, |sub| {
                    let pts = c.domain.subset(sub);
                    for mask in 0..1u64 << size {
                        let labels = Labelling::from_mask(mask, size);
                        match one_sided_vc_test(&c.class, &pts, labels.bits()) {
                            Ok(v) => {
                                tested += 1;
                                rejected += (!v.accept) as u64;
                            }
                            Err(e) => {
                                err = Some(e);
                                return false;
                            }
                        }
                    }
                    true
                });
                if let Some(e) = err.take() {
                    return Err(e.into());
                }
            }
            Ok(Check::new(
                format!("{}: all labellings of subsets of size <= {lvc}", c.label),
                "a sample of at most LVC points can never refute membership",
                "0 rejections",
                format!("{rejected} rejections of {tested} samples"),
                rejected == 0,
            ))
        })
        .collect()
}

// ---------------------------------------------------------------- lp

fn random_feasible_system(rng: &mut ChaCha8Rng, dim: usize, rows: usize) -> LinearSystem<Q> {
    let y: Vec<i64> = (0..dim).map(|_| rng.random_range(-5..=5)).collect();
    let mut sys = LinearSystem::new(dim);
    for _ in 0..rows {
        let a: Vec<i64> = (0..dim).map(|_| rng.random_range(-5..=5)).collect();
        let value: i64 = a.iter().zip(&y).map(|(x, z)| x * z).sum();
        let slack = rng.random_range(0..=3);
        sys.push(Constraint::ge(a.into_iter().map(q).collect(), q(value - slack)));
    }
    sys
}

fn lp() -> Result<Vec<Check>> {
    let seed = suite_seed("lp");
    let accepted = count_par(200, |t| {
        let mut rng = seed.derive(0).derive(t as u64).rng();
        let sys = random_feasible_system(&mut rng, 4, 30);
        let weights = FiniteDistribution::uniform(30);
        let cfg = TesterConfig::new(0.05, seed.derive(1).derive(t as u64))?;
        Ok(lp_feasibility_test(&sys, &weights, &cfg)?.accept)
    })?;
    let yes_accepted = count_par(200, |t| {
        let inst = lp_hard_instance(6, Side::Yes, lp_default_support(6, Side::Yes), seed.derive(2).derive(t as u64))?;
        let cfg = TesterConfig::new(0.05, seed.derive(3).derive(t as u64))?;
        Ok(lp_feasibility_test(&inst.system, &inst.constraint_weights, &cfg)?.accept)
    })?;
    let rejected = count_par(200, |t| {
        let inst = lp_hard_instance(6, Side::No, lp_default_support(6, Side::No), seed.derive(4).derive(t as u64))?;
        let cfg = TesterConfig::new(0.05, seed.derive(5).derive(t as u64))?;
        Ok(!lp_feasibility_test(&inst.system, &inst.constraint_weights, &cfg)?.accept)
    })?;
    Ok(vec![
        Check::new(
            "random feasible systems, 30 constraints in 4 variables",
            "the LP tester is one-sided",
            "200/200 accepted",
            format!("{accepted}/200"),
            accepted == 200,
        ),
        Check::new(
            "yes-side moment-curve instances, n = 6",
            "n + 1 labelled points on the moment curve are always separable",
            "200/200 accepted",
            format!("{yes_accepted}/200"),
            yes_accepted == 200,
        ),
        Check::new(
            "no-side moment-curve instances, n = 6, eps = 0.05",
            "random labels on many moment-curve points give far-from-feasible systems that sampling refutes",
            "rejection lower bound >= 2/3",
            rate_text(rejected, 200),
            wilson_low(rejected, 200) >= 2.0 / 3.0,
        ),
    ])
}
