//! Labelled-instance files.
//!
//! ```text
//! # comments and blank lines are ignored
//! domain real-space 2
//! distribution
//! 1,1/2 1/4
//! 3,0 3/4
//! labelling
//! 1
//! 0
//! ```
//!
//! The header names the point kind (`real-line`, `real-space`, `cube`,
//! `poset`, `abstract`) and the dimension (`0` for the indexed kinds). Each
//! distribution line is a point and its weight; real coordinates are
//! comma-separated rationals, cube points are bit strings, poset and abstract
//! points are indices. Weights must sum to exactly 1. The labelling block has
//! one `0` or `1` per point, in the same order.

use vctest_core::domain::{DomainKind, FiniteDistribution, FiniteDomain, Labelling, Point};
use vctest_core::feasibility::LinearSystem;
use vctest_core::rational::{format_rational, parse_rational, q_to_f64, Q};
use vctest_core::Error;

use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub domain: FiniteDomain,
    pub distribution: FiniteDistribution,
    pub labelling: Labelling,
}

impl Instance {
    pub fn new(domain: FiniteDomain, distribution: FiniteDistribution, labelling: Labelling) -> Result<Self> {
        if distribution.len() != domain.len() || labelling.len() != domain.len() {
            return Err(Error::DomainMismatch(format!(
                "{} points, {} weights, {} labels",
                domain.len(),
                distribution.len(),
                labelling.len()
            ))
            .into());
        }
        Ok(Self {
            domain,
            distribution,
            labelling,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(0, "empty instance file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (kind, dim) = match fields.as_slice() {
            ["domain", kind, dim] => {
                let kind = kind_from_name(kind).ok_or_else(|| parse_err(1, "unknown domain kind"))?;
                let dim: usize = dim.parse().map_err(|_| parse_err(1, "bad dimension"))?;
                (kind, dim)
            }
            _ => return Err(parse_err(1, "expected `domain <kind> <dim>`").into()),
        };
        match lines.next() {
            Some((_, "distribution")) => {}
            Some((no, _)) => return Err(parse_err(no, "expected `distribution`").into()),
            None => return Err(parse_err(0, "missing distribution block").into()),
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let mut bits = Vec::new();
        let mut in_labels = false;
        for (no, line) in lines {
            if line == "labelling" {
                if in_labels {
                    return Err(parse_err(no, "repeated labelling block").into());
                }
                in_labels = true;
                continue;
            }
            if in_labels {
                bits.push(match line {
                    "0" => false,
                    "1" => true,
                    _ => return Err(parse_err(no, "labels must be 0 or 1").into()),
                });
                continue;
            }
            let (p, w) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_err(no, "expected `<point> <weight>`"))?;
            points.push(parse_point(kind, dim, p.trim()).map_err(|e| parse_err(no, &e.to_string()))?);
            weights.push(parse_rational(w.trim()).map_err(|e| parse_err(no, &e.to_string()))?);
        }
        if !in_labels {
            return Err(parse_err(0, "missing labelling block").into());
        }
        let domain = FiniteDomain::new(points)?;
        let distribution = FiniteDistribution::new(weights)?;
        Self::new(domain, distribution, Labelling::new(bits))
    }

    pub fn to_text(&self) -> String {
        let kind = self.domain.kind().unwrap_or(DomainKind::Abstract);
        let dim = match kind {
            DomainKind::Poset | DomainKind::Abstract => 0,
            _ => self.domain.dim().unwrap_or(0),
        };
        let mut out = format!("domain {} {dim}\ndistribution\n", kind.name());
        for (p, w) in self.domain.points().iter().zip(self.distribution.weights()) {
            out.push_str(&format_point(p));
            out.push(' ');
            out.push_str(&format_rational(w));
            out.push('\n');
        }
        out.push_str("labelling\n");
        for &b in self.labelling.bits() {
            out.push_str(if b { "1\n" } else { "0\n" });
        }
        out
    }

    /// Indices of points with positive weight.
    pub fn support(&self) -> Vec<usize> {
        self.distribution.support()
    }

    pub fn real_points_f64(&self) -> Result<Vec<Vec<f64>>> {
        self.domain
            .points()
            .iter()
            .map(|p| {
                p.as_real()
                    .map(|v| v.iter().map(q_to_f64).collect())
                    .ok_or_else(|| Error::DomainMismatch(format!("expected a real point, got {p}")).into())
            })
            .collect()
    }

    /// Margin system over the support points and the induced constraint
    /// weights.
    pub fn margin_system(&self) -> Result<(LinearSystem<Q>, FiniteDistribution)> {
        let support = self.support();
        let mut reals = Vec::with_capacity(support.len());
        for &i in &support {
            let p = &self.domain.points()[i];
            reals.push(
                p.as_real()
                    .ok_or_else(|| Error::DomainMismatch(format!("expected a real point, got {p}")))?
                    .to_vec(),
            );
        }
        let labels: Vec<bool> = support.iter().map(|&i| self.labelling.bits()[i]).collect();
        let system = vctest_core::classes::margin_system(&reals, &labels);
        if system.constraints.len() != support.len() {
            return Err(Error::InvalidInput("support points must be distinct".into()).into());
        }
        let weights: Vec<Q> = support.iter().map(|&i| self.distribution.weight(i).clone()).collect();
        Ok((system, FiniteDistribution::new(weights)?))
    }

    /// Poset element indices, for monotone and symmetric testers.
    pub fn indices(&self) -> Result<Vec<usize>> {
        self.domain
            .points()
            .iter()
            .map(|p| match p {
                Point::Poset(i) | Point::Index(i) => Ok(*i),
                other => Err(Error::DomainMismatch(format!("expected an indexed point, got {other}")).into()),
            })
            .collect()
    }
}

fn parse_err(line: usize, msg: &str) -> Error {
    if line == 0 {
        Error::Parse(msg.to_string())
    } else {
        Error::Parse(format!("line {line}: {msg}"))
    }
}

fn kind_from_name(name: &str) -> Option<DomainKind> {
    [
        DomainKind::RealLine,
        DomainKind::RealSpace,
        DomainKind::Cube,
        DomainKind::Poset,
        DomainKind::Abstract,
    ]
    .into_iter()
    .find(|k| k.name() == name)
}

fn parse_point(kind: DomainKind, dim: usize, text: &str) -> vctest_core::Result<Point> {
    match kind {
        DomainKind::RealLine | DomainKind::RealSpace => {
            let coords = text
                .split(',')
                .map(parse_rational)
                .collect::<vctest_core::Result<Vec<Q>>>()?;
            if coords.len() != dim {
                return Err(Error::Parse(format!("expected {dim} coordinates in {text:?}")));
            }
            Ok(Point::Real(coords))
        }
        DomainKind::Cube => {
            let p = Point::cube_from_str(text)?;
            if p.dim() != Some(dim) {
                return Err(Error::Parse(format!("expected {dim} bits in {text:?}")));
            }
            Ok(p)
        }
        DomainKind::Poset | DomainKind::Abstract => {
            let i: usize = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {text:?}")))?;
            Ok(if kind == DomainKind::Poset {
                Point::Poset(i)
            } else {
                Point::Index(i)
            })
        }
    }
}

fn format_point(p: &Point) -> String {
    match p {
        Point::Real(v) => v.iter().map(format_rational).collect::<Vec<_>>().join(","),
        Point::Cube(_) => p.to_string(),
        Point::Poset(i) | Point::Index(i) => i.to_string(),
    }
}

/// Rounds a float coordinate to an exact rational through its shortest
/// decimal form, so written files stay readable.
pub fn decimal_q(x: f64) -> Result<Q> {
    if !x.is_finite() {
        return Err(Error::InvalidInput("non-finite coordinate".into()).into());
    }
    Ok(parse_rational(&format!("{x}"))?)
}
