use super::{distinct, shrink_failure, TesterConfig, Verdict, Witness};
use crate::classes::ConsistencyOracle;
use crate::domain::{sample, FiniteDistribution, FiniteDomain, Labelling, Point};
use crate::error::{Error, Result};

/// `ceil((8/eps) (d ln(16/eps) + ln 3))`.
pub fn one_sided_sample_size(d: usize, epsilon: f64) -> usize {
    ((8.0 / epsilon) * (d as f64 * (16.0 / epsilon).ln() + 3f64.ln())).ceil() as usize
}

/// Accepts iff some member of the class agrees with every labelled sample.
/// Repeated points are tested once. A rejection carries an irreducible
/// inconsistent subset, as positions in `points`.
pub fn one_sided_vc_test<C: ConsistencyOracle + ?Sized>(
    class: &C,
    points: &[Point],
    labels: &[bool],
) -> Result<Verdict> {
    if points.len() != labels.len() {
        return Err(Error::DomainMismatch(format!(
            "{} sample points but {} labels",
            points.len(),
            labels.len()
        )));
    }
    let mut first_seen: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        match first_seen.iter().find(|&&j| points[j] == points[i]) {
            Some(&j) if labels[j] != labels[i] => {
                return Ok(Verdict::reject(points.len(), Witness::Inconsistent { points: vec![j, i] }));
            }
            Some(_) => {}
            None => first_seen.push(i),
        }
    }
    let fails = |idx: &[usize]| -> Result<bool> {
        let p: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
        let l: Vec<bool> = idx.iter().map(|&i| labels[i]).collect();
        Ok(!class.consistent(&p, &l)?)
    };
    if !fails(&first_seen)? {
        return Ok(Verdict::accept(points.len()));
    }
    let core = shrink_failure(first_seen, fails)?;
    Ok(Verdict::reject(points.len(), Witness::Inconsistent { points: core }))
}

/// Draws the sample from `dist` and labels it with `f`; the witness is given
/// as domain indices. `d` sets the default sample size.
pub fn one_sided_vc_run<C: ConsistencyOracle + ?Sized>(
    class: &C,
    domain: &FiniteDomain,
    dist: &FiniteDistribution,
    f: &Labelling,
    d: usize,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    let m = cfg.size_or(one_sided_sample_size(d, cfg.epsilon));
    let drawn = sample(dist, m, cfg.seed);
    let idx = distinct(&drawn);
    let points = domain.subset(&idx);
    let labels: Vec<bool> = idx.iter().map(|&i| f.bits()[i]).collect();
    let mut verdict = one_sided_vc_test(class, &points, &labels)?;
    verdict.samples_used = m;
    if let Some(Witness::Inconsistent { points }) = &mut verdict.witness {
        for p in points.iter_mut() {
            *p = idx[*p];
        }
    }
    Ok(verdict)
}
