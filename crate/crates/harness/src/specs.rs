//! String specs for domains, instance generators and testers.
//!
//! Specs have the shape `name:key=value,key=value`. A bare value after the
//! colon (`line:20`) is shorthand for the size parameter.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use vctest_core::classes::{FunctionClass, Poset};
use vctest_core::dimension::{lvc_dim, vc_dim};
use vctest_core::domain::{FiniteDistribution, FiniteDomain, Labelling, Point, Seed};
use vctest_core::hardness::{
    cluster_instance, general_position_set, lp_default_support, lp_hard_instance, Side, SsdParams, SsdSampler,
};
use vctest_core::rational::{parse_rational, q, Q};
use vctest_core::testers::{
    cluster_test, junta_run, lp_feasibility_test, monotone_test, one_sided_vc_run, symmetric_test,
    symmetric_threshold_test, TesterConfig, Verdict,
};
use vctest_core::Error;

use crate::error::{read_text, HarnessError, Result};
use crate::instance::{decimal_q, Instance};

/// Parsed `name:key=value,...` spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl Spec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').unwrap_or(("size", part));
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(spec_err(text, &format!("repeated key {k:?}")));
            }
        }
        if name.is_empty() {
            return Err(spec_err(text, "missing name"));
        }
        Ok(Self {
            name: name.to_string(),
            params,
        })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.params
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| spec_err(&self.name, &format!("bad value {v:?} for {key}")))
            })
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| spec_err(&self.name, &format!("missing parameter {key}")))
    }

    fn rational(&self, key: &str) -> Result<Option<Q>> {
        self.params.get(key).map(|v| Ok(parse_rational(v)?)).transpose()
    }

    fn side(&self) -> Result<Option<Side>> {
        self.params.get("side").map(|v| Ok(Side::parse(v)?)).transpose()
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(spec_err(&self.name, &format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }
}

fn spec_err(spec: &str, msg: &str) -> HarnessError {
    HarnessError::Core(Error::Parse(format!("spec {spec:?}: {msg}")))
}

/// Domains:
/// `line:N` (points 1..N),
/// `moment:n=,size=` (`(t, ..., t^n)` for t = 1..size),
/// `axis:n=,size=` (`t e_1` in `R^n`),
/// `cube:n=` (all vertices) or `cube:n=,size=,seed=` (random distinct vertices),
/// `index:N`, `poset:N` or `poset:@file`.
pub fn parse_domain_spec(text: &str) -> Result<FiniteDomain> {
    let spec = Spec::parse(text)?;
    match spec.name.as_str() {
        "line" => {
            spec.only(&["size"])?;
            Ok(FiniteDomain::line(spec.require("size")?))
        }
        "moment" => {
            spec.only(&["n", "size"])?;
            Ok(general_position_set(spec.require("n")?, spec.require("size")?)?)
        }
        "axis" => {
            spec.only(&["n", "size"])?;
            let n: usize = spec.require("n")?;
            let size: usize = spec.require("size")?;
            let points = (1..=size as i64)
                .map(|t| {
                    let mut c = vec![Q::zero(); n];
                    c[0] = q(t);
                    Point::Real(c)
                })
                .collect();
            Ok(FiniteDomain::new(points)?)
        }
        "cube" => {
            spec.only(&["n", "size", "seed"])?;
            let n: usize = spec.require("n")?;
            match spec.get::<usize>("size")? {
                None => Ok(FiniteDomain::full_cube(n)),
                Some(size) => {
                    let seed = Seed(spec.get("seed")?.unwrap_or(0));
                    Ok(random_cube_points(n, size, seed)?)
                }
            }
        }
        "index" => {
            spec.only(&["size"])?;
            Ok(FiniteDomain::indices(spec.require("size")?))
        }
        "poset" => {
            spec.only(&["size"])?;
            let raw = spec.params.get("size").ok_or_else(|| spec_err(text, "missing size"))?;
            let n = match raw.strip_prefix('@') {
                Some(path) => Poset::parse(&read_text(path)?)?.len(),
                None => raw.parse().map_err(|_| spec_err(text, "bad size"))?,
            };
            Ok(FiniteDomain::poset_elements(n))
        }
        other => Err(spec_err(text, &format!("unknown domain {other:?}"))),
    }
}

/// `size` distinct uniformly random vertices of `{0,1}^n`.
pub fn random_cube_points(n: usize, size: usize, seed: Seed) -> Result<FiniteDomain> {
    if n >= 63 || size > 1usize << n {
        return Err(Error::InvalidInput(format!("cannot pick {size} distinct points of {{0,1}}^{n}")).into());
    }
    let mut rng = seed.rng();
    let picks = index::sample(&mut rng, 1usize << n, size);
    let points = picks
        .into_iter()
        .map(|v| Point::Cube((0..n).map(|b| v >> b & 1 == 1).collect()))
        .collect();
    Ok(FiniteDomain::new(points)?)
}

/// Which tester to run on an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TesterKind {
    /// One-sided consistency tester for an arbitrary class.
    Consistency,
    Junta,
    Monotone,
    Symmetric,
    Lp,
    Cluster { k: usize },
}

impl TesterKind {
    /// `vc`, `junta`, `monotone`, `symmetric`, `lp`, `cluster:k=K`.
    pub fn parse(text: &str) -> Result<Self> {
        let spec = Spec::parse(text)?;
        let kind = match spec.name.as_str() {
            "vc" | "consistency" => TesterKind::Consistency,
            "junta" => TesterKind::Junta,
            "monotone" => TesterKind::Monotone,
            "symmetric" => TesterKind::Symmetric,
            "lp" => TesterKind::Lp,
            "cluster" => {
                spec.only(&["k"])?;
                return Ok(TesterKind::Cluster { k: spec.require("k")? });
            }
            other => return Err(spec_err(text, &format!("unknown tester {other:?}"))),
        };
        spec.only(&[])?;
        Ok(kind)
    }

    /// The dedicated tester for juntas, monotone and symmetric classes; the
    /// consistency tester otherwise.
    pub fn default_for(class: &FunctionClass) -> Self {
        match class {
            FunctionClass::Junta { .. } => TesterKind::Junta,
            FunctionClass::Monotone { .. } => TesterKind::Monotone,
            FunctionClass::SymmetricThreshold { .. } => TesterKind::Symmetric,
            _ => TesterKind::Consistency,
        }
    }
}

/// Runs one tester on a labelled instance. `vc` sets the default sample size
/// of the consistency tester.
pub fn run_tester(
    kind: TesterKind,
    class: Option<&FunctionClass>,
    inst: &Instance,
    vc: Option<usize>,
    cfg: &TesterConfig,
) -> Result<Verdict> {
    let need_class = || class.ok_or_else(|| HarnessError::Usage("this tester needs --class".into()));
    match kind {
        TesterKind::Consistency => {
            let class = need_class()?;
            let d = match (vc, cfg.sample_size) {
                (Some(d), _) => d,
                (None, Some(_)) => 1,
                (None, None) => vc_dim(class, &inst.domain)?,
            };
            Ok(one_sided_vc_run(class, &inst.domain, &inst.distribution, &inst.labelling, d, cfg)?)
        }
        TesterKind::Junta => match need_class()? {
            FunctionClass::Junta { n, k } => {
                Ok(junta_run(*n, *k, &inst.domain, &inst.distribution, &inst.labelling, cfg)?)
            }
            other => Err(HarnessError::Usage(format!("junta tester needs a junta class, got {other}"))),
        },
        TesterKind::Monotone => match need_class()? {
            FunctionClass::Monotone { poset } => {
                check_enumerated(inst, poset.len())?;
                Ok(monotone_test(poset, &inst.distribution, &inst.labelling, cfg)?)
            }
            other => Err(HarnessError::Usage(format!("monotone tester needs a monotone class, got {other}"))),
        },
        TesterKind::Symmetric => match need_class()? {
            FunctionClass::SymmetricThreshold { n, t } => {
                check_enumerated(inst, *n)?;
                let bits = inst.labelling.bits();
                if *t == n / 5 {
                    Ok(symmetric_test(*n, |i| bits[i], cfg)?)
                } else {
                    Ok(symmetric_threshold_test(*n, *t, |i| bits[i], cfg)?)
                }
            }
            other => Err(HarnessError::Usage(format!(
                "symmetric tester needs a symmetric class, got {other}"
            ))),
        },
        TesterKind::Lp => {
            let (system, weights) = inst.margin_system()?;
            Ok(lp_feasibility_test(&system, &weights, cfg)?)
        }
        TesterKind::Cluster { k } => {
            let points = inst.real_points_f64()?;
            Ok(cluster_test(&points, &inst.distribution, k, cfg)?)
        }
    }
}

/// The monotone and symmetric testers index the labelling by element, so
/// the domain must list elements `0..n` in order.
fn check_enumerated(inst: &Instance, n: usize) -> Result<()> {
    let idx = inst.indices()?;
    if idx.len() != n || idx.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::DomainMismatch(format!("instance must list elements 0..{n} in order")).into());
    }
    Ok(())
}

/// Random instance families for sweeps and `hardgen`.
///
/// * `ssd:domain=<domain spec>[,alpha=,beta=]`: support-size instances for
///   the sweep's class. Defaults: `alpha n = lvc`, `beta n = min(4 vc, n)`.
///   Domain specs containing commas go last, as in
///   `ssd:alpha=1/5,domain=moment:n=2,size=9`.
/// * `chain:n=N`: chain poset, uniform weights. Yes: monotone step. No:
///   ones on the lowest `floor(eps n) + 1` elements, so the distance to
///   monotone exceeds `eps`.
/// * `symmetric:n=N`: `[n]`, yes with `floor(n/5)` ones, no with
///   `floor(2n/5)` ones at random positions.
/// * `junta:n=,k=`: uniform cube; yes a random `k`-junta, no a random
///   function.
/// * `lp:n=[,support=]`: labelled moment-curve points with multiplicities.
/// * `cluster:n=,k=,eta=,m=`: sphere mixture points, uniform weights. The
///   yes and no sides take `m` as given.
///
/// Any generator accepts `side=yes|no` to restrict a sweep to one side.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Ssd { domain: FiniteDomain, domain_spec: String, alpha: Option<Q>, beta: Option<Q> },
    Chain { n: usize },
    Symmetric { n: usize },
    Junta { n: usize, k: usize },
    Lp { n: usize, support: Option<usize> },
    Cluster { n: usize, k: usize, eta: f64, m: usize },
}

/// A generator with the sides it runs on.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub generator: Generator,
    pub sides: Vec<Side>,
}

impl GeneratorSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, domain_spec) = match text.split_once("domain=") {
            Some((h, d)) => (h.trim_end_matches(',').to_string(), Some(d.trim().to_string())),
            None => (text.to_string(), None),
        };
        let spec = Spec::parse(&head)?;
        let sides = match spec.side()? {
            Some(s) => vec![s],
            None => vec![Side::Yes, Side::No],
        };
        let generator = match spec.name.as_str() {
            "ssd" => {
                spec.only(&["alpha", "beta", "side"])?;
                let domain_spec = domain_spec.ok_or_else(|| spec_err(text, "ssd needs domain=<spec>"))?;
                Generator::Ssd {
                    domain: parse_domain_spec(&domain_spec)?,
                    domain_spec,
                    alpha: spec.rational("alpha")?,
                    beta: spec.rational("beta")?,
                }
            }
            other => {
                if domain_spec.is_some() {
                    return Err(spec_err(text, "only ssd takes a domain"));
                }
                match other {
                    "chain" => {
                        spec.only(&["n", "side"])?;
                        Generator::Chain { n: spec.require("n")? }
                    }
                    "symmetric" => {
                        spec.only(&["n", "side"])?;
                        Generator::Symmetric { n: spec.require("n")? }
                    }
                    "junta" => {
                        spec.only(&["n", "k", "side"])?;
                        Generator::Junta {
                            n: spec.require("n")?,
                            k: spec.require("k")?,
                        }
                    }
                    "lp" => {
                        spec.only(&["n", "support", "side"])?;
                        Generator::Lp {
                            n: spec.require("n")?,
                            support: spec.get("support")?,
                        }
                    }
                    "cluster" => {
                        spec.only(&["n", "k", "eta", "m", "side"])?;
                        Generator::Cluster {
                            n: spec.require("n")?,
                            k: spec.require("k")?,
                            eta: spec.require("eta")?,
                            m: spec.require("m")?,
                        }
                    }
                    _ => return Err(spec_err(text, &format!("unknown generator {other:?}"))),
                }
            }
        };
        Ok(Self { generator, sides })
    }
}

impl Generator {
    /// The class the generated instances are meant for, when the generator
    /// fixes it.
    pub fn natural_class(&self) -> Option<FunctionClass> {
        match self {
            Generator::Ssd { .. } | Generator::Cluster { .. } => None,
            Generator::Chain { n } => Some(FunctionClass::monotone(Poset::chain(*n))),
            Generator::Symmetric { n } => Some(FunctionClass::symmetric_fifth(*n)),
            Generator::Junta { n, k } => Some(FunctionClass::Junta { n: *n, k: *k }),
            Generator::Lp { n, .. } => Some(FunctionClass::Halfspace { n: *n }),
        }
    }

    pub fn default_tester(&self) -> Option<TesterKind> {
        match self {
            Generator::Lp { .. } => Some(TesterKind::Lp),
            Generator::Cluster { k, .. } => Some(TesterKind::Cluster { k: *k }),
            _ => None,
        }
    }

    /// Number of domain points of every generated instance.
    pub fn domain_size(&self) -> usize {
        match self {
            Generator::Ssd { domain, .. } => domain.len(),
            Generator::Chain { n } | Generator::Symmetric { n } => *n,
            Generator::Junta { n, .. } => 1 << n,
            Generator::Lp { n, .. } => vctest_core::hardness::lp_domain_size(*n),
            Generator::Cluster { m, .. } => *m,
        }
    }

    /// Prepares per-sweep state (for `ssd`, the dimensions and the checked
    /// support sizes).
    pub fn prepare(&self, class: Option<&FunctionClass>, side: Side) -> Result<Prepared> {
        match self {
            Generator::Ssd { domain, alpha, beta, .. } => {
                let class = class.ok_or_else(|| HarnessError::Usage("ssd generator needs a class".into()))?;
                let n = domain.len();
                let nq = q(n as i64);
                let alpha = match alpha {
                    Some(a) => a.clone(),
                    None => q(lvc_dim(class, domain)? as i64) / &nq,
                };
                let beta = match beta {
                    Some(b) => b.clone(),
                    None => q((4 * vc_dim(class, domain)?).min(n) as i64) / &nq,
                };
                let params = SsdParams::new(n, alpha, beta, Q::new(1.into(), 10.into()), 4)?;
                Ok(Prepared::Ssd {
                    sampler: SsdSampler::new(class, domain, side, &params)?,
                    domain: domain.clone(),
                })
            }
            _ => Ok(Prepared::Plain),
        }
    }

    pub fn generate(&self, prepared: &Prepared, side: Side, epsilon: f64, seed: Seed) -> Result<Instance> {
        match (self, prepared) {
            (Generator::Ssd { .. }, Prepared::Ssd { sampler, domain }) => {
                let inst = sampler.draw(seed)?;
                Instance::new(domain.clone(), inst.distribution, inst.labelling)
            }
            (Generator::Ssd { .. }, Prepared::Plain) => {
                Err(HarnessError::Usage("ssd generator used without preparation".into()))
            }
            (Generator::Chain { n }, _) => {
                let n = *n;
                let bits: Vec<bool> = match side {
                    Side::Yes => (0..n).map(|i| 2 * i >= n).collect(),
                    Side::No => {
                        let low = ((epsilon * n as f64).floor() as usize + 1).min(n);
                        (0..n).map(|i| i < low).collect()
                    }
                };
                Instance::new(
                    FiniteDomain::poset_elements(n),
                    FiniteDistribution::uniform(n),
                    Labelling::new(bits),
                )
            }
            (Generator::Symmetric { n }, _) => {
                let n = *n;
                let ones = match side {
                    Side::Yes => n / 5,
                    Side::No => 2 * n / 5,
                };
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut seed.rng());
                let mut bits = vec![false; n];
                for &i in &order[..ones] {
                    bits[i] = true;
                }
                Instance::new(FiniteDomain::indices(n), FiniteDistribution::uniform(n), Labelling::new(bits))
            }
            (Generator::Junta { n, k }, _) => {
                let (n, k) = (*n, *k);
                let domain = FiniteDomain::full_cube(n);
                let mut rng = seed.rng();
                let bits: Vec<bool> = match side {
                    Side::Yes => {
                        let coords = index::sample(&mut rng, n, k.min(n)).into_vec();
                        let table: Vec<bool> = (0..1usize << coords.len()).map(|_| rng.random_bool(0.5)).collect();
                        domain
                            .points()
                            .iter()
                            .map(|p| {
                                let x = p.as_cube().expect("cube point");
                                let key = coords.iter().enumerate().fold(0, |acc, (b, &c)| acc | (x[c] as usize) << b);
                                table[key]
                            })
                            .collect()
                    }
                    Side::No => (0..domain.len()).map(|_| rng.random_bool(0.5)).collect(),
                };
                let len = domain.len();
                Instance::new(domain, FiniteDistribution::uniform(len), Labelling::new(bits))
            }
            (Generator::Lp { n, support }, _) => {
                let size = support.unwrap_or_else(|| lp_default_support(*n, side));
                let lp = lp_hard_instance(*n, side, size, seed)?;
                let dist = lp.distribution();
                Instance::new(lp.points, dist, lp.labelling)
            }
            (Generator::Cluster { n, k, eta, m }, _) => {
                let c = cluster_instance(*n, *k, *eta, *m, side, seed)?;
                let points = c
                    .points
                    .iter()
                    .map(|p| Ok(Point::Real(p.iter().map(|&x| decimal_q(x)).collect::<Result<Vec<Q>>>()?)))
                    .collect::<Result<Vec<Point>>>()?;
                let len = points.len();
                Instance::new(
                    FiniteDomain::new(points)?,
                    FiniteDistribution::uniform(len),
                    Labelling::constant(len, true),
                )
            }
        }
    }
}

/// Per-sweep generator state.
#[derive(Clone, Debug)]
pub enum Prepared {
    Plain,
    Ssd { sampler: SsdSampler, domain: FiniteDomain },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_shapes() {
        let s = Spec::parse("line:20").unwrap();
        assert_eq!(s.params["size"], "20");
        let s = Spec::parse("moment:n=2,size=9").unwrap();
        assert_eq!(s.params["n"], "2");
        assert!(Spec::parse("cube:n=2,n=3").is_err());
    }

    #[test]
    fn domains() {
        assert_eq!(parse_domain_spec("line:5").unwrap().len(), 5);
        assert_eq!(parse_domain_spec("cube:n=3").unwrap().len(), 8);
        let c = parse_domain_spec("cube:n=6,size=12,seed=4").unwrap();
        assert_eq!(c.len(), 12);
        assert_eq!(c, parse_domain_spec("cube:n=6,size=12,seed=4").unwrap());
        assert_eq!(parse_domain_spec("axis:n=3,size=4").unwrap().dim(), Some(3));
        assert!(parse_domain_spec("sphere:3").is_err());
    }

    #[test]
    fn generator_with_nested_domain() {
        let g = GeneratorSpec::parse("ssd:side=no,domain=moment:n=2,size=9").unwrap();
        assert_eq!(g.sides, vec![Side::No]);
        assert_eq!(g.generator.domain_size(), 9);
    }

    #[test]
    fn chain_no_side_is_far() {
        let g = Generator::Chain { n: 64 };
        let inst = g.generate(&Prepared::Plain, Side::No, 0.2, Seed(0)).unwrap();
        assert_eq!(inst.labelling.ones(), 13);
        let yes = g.generate(&Prepared::Plain, Side::Yes, 0.2, Seed(0)).unwrap();
        assert!(Poset::chain(64).is_monotone(yes.labelling.bits()));
    }
}
