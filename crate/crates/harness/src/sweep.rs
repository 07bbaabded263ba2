//! Monte-Carlo sample-size sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use vctest_core::classes::{parse_class_spec, FunctionClass};
use vctest_core::dimension::{lvc_dim, vc_dim};
use vctest_core::domain::{FiniteDomain, Seed};
use vctest_core::hardness::Side;
use vctest_core::stats::Proportion;
use vctest_core::testers::TesterConfig;
use vctest_core::Error;

use crate::config::SweepConfig;
use crate::error::{HarnessError, Result};
use crate::specs::{Generator, GeneratorSpec, TesterKind};

/// One grid point of a sweep on one side. `params` joins the class
/// parameters, the generator spec and the side with `|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub class: String,
    pub params: String,
    pub n: usize,
    pub vc: Option<usize>,
    pub lvc: Option<usize>,
    pub eps: f64,
    pub m: usize,
    pub trials: usize,
    pub accept_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub records: Vec<ExperimentRecord>,
    /// Smallest grid size at which every swept side meets the target: the
    /// lower Wilson bound of the acceptance rate on the yes side and of the
    /// rejection rate on the no side.
    pub minimal_m: Option<usize>,
}

/// Classes whose oracle needs an LP or a tree search; their dimensions are
/// only computed on small domains.
fn expensive(class: &FunctionClass) -> bool {
    matches!(
        class,
        FunctionClass::Halfspace { .. }
            | FunctionClass::Ptf { .. }
            | FunctionClass::BooleanDecisionTree { .. }
            | FunctionClass::HyperplaneArrangement { .. }
    )
}

/// `(vc, lvc)` of the class on the domain when affordable.
pub fn affordable_dims(class: &FunctionClass, domain: &FiniteDomain) -> Result<(Option<usize>, Option<usize>)> {
    if expensive(class) && domain.len() > 12 {
        return Ok((None, None));
    }
    let soft = |r: vctest_core::Result<usize>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(HarnessError::from(e)),
    };
    Ok((soft(vc_dim(class, domain))?, soft(lvc_dim(class, domain))?))
}

fn generator_domain(g: &Generator) -> Option<FiniteDomain> {
    match g {
        Generator::Ssd { domain, .. } => Some(domain.clone()),
        Generator::Chain { n } => Some(FiniteDomain::poset_elements(*n)),
        Generator::Symmetric { n } => Some(FiniteDomain::indices(*n)),
        Generator::Junta { n, .. } => Some(FiniteDomain::full_cube(*n)),
        Generator::Lp { n, .. } => vctest_core::hardness::general_position_set(*n, vctest_core::hardness::lp_domain_size(*n)).ok(),
        Generator::Cluster { .. } => None,
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let gen = GeneratorSpec::parse(&cfg.generator)?;
    let class = match &cfg.class {
        Some(spec) => Some(parse_class_spec(spec)?),
        None => gen.generator.natural_class(),
    };
    let tester = match (&cfg.tester, gen.generator.default_tester(), &class) {
        (Some(t), _, _) => TesterKind::parse(t)?,
        (None, Some(t), _) => t,
        (None, None, Some(c)) => TesterKind::default_for(c),
        (None, None, None) => return Err(HarnessError::Usage("sweep needs a class or a tester".into())),
    };
    let (vc, lvc) = match (cfg.vc, cfg.lvc, &class, generator_domain(&gen.generator)) {
        (Some(v), Some(l), _, _) => (Some(v), Some(l)),
        (v, l, Some(c), Some(d)) => {
            let (cv, cl) = affordable_dims(c, &d)?;
            (v.or(cv), l.or(cl))
        }
        (v, l, _, _) => (v, l),
    };
    let (class_name, class_params) = match &class {
        Some(c) => {
            let s = c.to_string();
            let (a, b) = s.split_once(':').unwrap_or((&s, ""));
            (a.to_string(), b.to_string())
        }
        None => ("none".to_string(), String::new()),
    };
    let generator_text = strip_side(&cfg.generator);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    let root = Seed(cfg.seed);
    let mut records = Vec::new();
    let mut met = vec![true; cfg.grid.len()];
    for &side in &gen.sides {
        let prepared = gen.generator.prepare(class.as_ref(), side)?;
        let side_seed = root.derive(side_index(side));
        for (gi, &m) in cfg.grid.iter().enumerate() {
            let outcomes: Vec<Result<bool>> = pool.install(|| {
                (0..cfg.trials)
                    .into_par_iter()
                    .map(|t| {
                        let trial_seed = side_seed.derive(t as u64);
                        let inst = gen.generator.generate(&prepared, side, cfg.epsilon, trial_seed.derive(0))?;
                        let tcfg = TesterConfig::new(cfg.epsilon, trial_seed.derive(1).derive(m as u64))?
                            .with_sample_size(m)?;
                        let verdict = crate::specs::run_tester(tester, class.as_ref(), &inst, vc, &tcfg)?;
                        Ok(verdict.accept)
                    })
                    .collect()
            });
            let mut accepted = 0;
            for o in outcomes {
                accepted += o? as usize;
            }
            let p = Proportion::new(accepted, cfg.trials);
            let (ci_low, ci_high) = p.wilson();
            let ok = match side {
                Side::Yes => ci_low >= cfg.target,
                Side::No => 1.0 - ci_high >= cfg.target,
            };
            met[gi] &= ok;
            records.push(ExperimentRecord {
                class: class_name.clone(),
                params: format!("{class_params}|{generator_text}|side={}", side.name()),
                n: gen.generator.domain_size(),
                vc,
                lvc,
                eps: cfg.epsilon,
                m,
                trials: cfg.trials,
                accept_rate: p.rate(),
                ci_low,
                ci_high,
                seed: cfg.seed,
            });
        }
    }
    let minimal_m = cfg.grid.iter().zip(&met).find(|(_, &ok)| ok).map(|(&m, _)| m);
    Ok(SweepOutcome { records, minimal_m })
}

fn side_index(side: Side) -> u64 {
    match side {
        Side::Yes => 0,
        Side::No => 1,
    }
}

fn strip_side(spec: &str) -> String {
    let (head, domain) = match spec.split_once("domain=") {
        Some((h, d)) => (h, Some(d)),
        None => (spec, None),
    };
    let (name, rest) = head.split_once(':').unwrap_or((head, ""));
    let mut parts: Vec<String> = rest
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty() && !p.starts_with("side="))
        .map(String::from)
        .collect();
    if let Some(d) = domain {
        parts.push(format!("domain={d}"));
    }
    if parts.is_empty() {
        name.trim().to_string()
    } else {
        format!("{}:{}", name.trim(), parts.join(","))
    }
}
