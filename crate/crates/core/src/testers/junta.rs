use std::collections::HashMap;

use super::{JuntaConflict, TesterConfig, Verdict, Witness};
use crate::classes::{for_each_subset, JUNTA_SCAN_BUDGET};
use crate::domain::{sample, FiniteDistribution, FiniteDomain, Labelling};
use crate::error::{Error, Result};
use crate::rational::binomial;

/// `(s, m)`: `s = ceil(ln(3 C(n,k)) / ln(5/4))` rounds of
/// `m = ceil((2/eps)(1 + sqrt(2^(k+1) ln 2)) + 24/eps)` samples.
pub fn junta_sample_sizes(n: usize, k: usize, epsilon: f64) -> (usize, usize) {
    let subsets = binomial(n as u64, k as u64) as f64;
    let s = ((3.0 * subsets).ln() / 1.25f64.ln()).ceil().max(1.0) as usize;
    let birthday = (2f64.powi(k as i32 + 1) * 2f64.ln()).sqrt();
    let m = ((2.0 / epsilon) * (1.0 + birthday) + 24.0 / epsilon).ceil() as usize;
    (s, m)
}

/// Accepts iff some set `J` of `k` coordinates has no witness: two samples
/// that agree on `J` but carry different labels. A rejection lists one
/// witness for every `J`, as positions in `sample`.
pub fn junta_test(n: usize, k: usize, labelled: &[(Vec<bool>, bool)]) -> Result<Verdict> {
    if k > n {
        return Err(Error::InvalidInput(format!("k = {k} exceeds n = {n}")));
    }
    if labelled.iter().any(|(x, _)| x.len() != n) {
        return Err(Error::DomainMismatch(format!("samples must have {n} coordinates")));
    }
    let candidates = binomial(n as u64, k as u64);
    if candidates > JUNTA_SCAN_BUDGET {
        return Err(Error::budget("junta subset scan", candidates, JUNTA_SCAN_BUDGET));
    }
    let mut conflicts = Vec::new();
    let mut clean = false;
    for_each_subset(n, k, |coords| {
        // First sample seen in each row of J, split by label.
        let mut rows: HashMap<Vec<bool>, [Option<usize>; 2]> = HashMap::new();
        for (i, (x, label)) in labelled.iter().enumerate() {
            let key: Vec<bool> = coords.iter().map(|&c| x[c]).collect();
            let slot = rows.entry(key).or_default();
            slot[*label as usize].get_or_insert(i);
            if let [Some(a), Some(b)] = *slot {
                conflicts.push(JuntaConflict {
                    coordinates: coords.to_vec(),
                    pair: (a.min(b), a.max(b)),
                });
                return true;
            }
        }
        clean = true;
        false
    });
    if clean {
        Ok(Verdict::accept(labelled.len()))
    } else {
        Ok(Verdict::reject(labelled.len(), Witness::JuntaConflicts { conflicts }))
    }
}

/// Draws `s * m` samples from `dist` over cube points labelled by `f`. The
/// rounds are pooled: rejecting iff every `J` is refuted by the union of the
/// rounds is the same as one sample of size `s * m`.
pub fn junta_run(
    n: usize,
    k: usize,
    domain: &FiniteDomain,
    dist: &FiniteDistribution,
    f: &Labelling,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    let (s, m) = junta_sample_sizes(n, k, cfg.epsilon);
    let s = cfg.repetitions.unwrap_or(s);
    let m = cfg.size_or(m);
    let drawn = sample(dist, s * m, cfg.seed);
    let mut labelled = Vec::with_capacity(drawn.len());
    for &i in &drawn {
        let x = domain.points()[i]
            .as_cube()
            .ok_or_else(|| Error::DomainMismatch("junta testing needs cube points".into()))?;
        labelled.push((x.to_vec(), f.bits()[i]));
    }
    let mut verdict = junta_test(n, k, &labelled)?;
    if let Some(Witness::JuntaConflicts { conflicts }) = &mut verdict.witness {
        for c in conflicts.iter_mut() {
            c.pair = (drawn[c.pair.0], drawn[c.pair.1]);
        }
    }
    Ok(verdict)
}
