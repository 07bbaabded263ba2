//! Textual class specs such as `intervals:k=3` or `monotone:poset=@file`.

use std::collections::HashMap;

use super::{AffineFunctional, FunctionClass, Poset, PtfDomain};
use crate::domain::Seed;
use crate::error::{Error, Result};
use crate::rational::parse_rational;

/// Parses a class spec, reading `@path` values from the filesystem.
pub fn parse_class_spec(spec: &str) -> Result<FunctionClass> {
    parse_class_spec_with(spec, |path| {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
    })
}

/// Parses a class spec with a caller-supplied file reader for `@path` values.
pub fn parse_class_spec_with(
    spec: &str,
    read_file: impl Fn(&str) -> Result<String>,
) -> Result<FunctionClass> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params = parse_params(rest)?;
    let num = |key: &str| -> Result<usize> {
        params
            .get(key)
            .ok_or_else(|| Error::Parse(format!("{name}: missing parameter {key}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("{name}: {key} must be a non-negative integer")))
    };
    let class = match name.trim() {
        "intervals" => FunctionClass::IntervalUnion { k: num("k")? },
        "alternating" => FunctionClass::Alternating { m: num("m")? },
        "halfspace" => FunctionClass::Halfspace { n: num("n")? },
        "halfspace-intersection" | "intersection" => FunctionClass::HalfspaceIntersection {
            n: num("n")?,
            k: num("k")?,
        },
        "ptf" => {
            let domain = match params.get("domain").map(String::as_str) {
                None | Some("real") => PtfDomain::Real,
                Some("cube") => PtfDomain::Cube,
                Some(other) => return Err(Error::Parse(format!("ptf: unknown domain {other:?}"))),
            };
            FunctionClass::Ptf {
                n: num("n")?,
                k: num("k")?,
                domain,
            }
        }
        "real-tree" => FunctionClass::RealDecisionTree {
            n: num("n")?,
            k: num("k")?,
        },
        "bool-tree" => FunctionClass::BooleanDecisionTree {
            n: num("n")?,
            k: num("k")?,
        },
        "junta" => FunctionClass::Junta {
            n: num("n")?,
            k: num("k")?,
        },
        "symmetric" => {
            let n = num("n")?;
            let t = if params.contains_key("t") { num("t")? } else { n / 5 };
            FunctionClass::SymmetricThreshold { n, t }
        }
        "monotone" => {
            let poset = if let Some(src) = params.get("poset") {
                let path = src
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse("monotone: poset must be @file".into()))?;
                Poset::parse(&read_file(path)?)?
            } else if params.contains_key("chain") {
                Poset::chain(num("chain")?)
            } else if params.contains_key("antichain") {
                Poset::antichain(num("antichain")?)
            } else {
                return Err(Error::Parse("monotone: need poset=@file, chain=n or antichain=n".into()));
            };
            FunctionClass::monotone(poset)
        }
        "arrangement" => {
            if let Some(src) = params.get("file") {
                let path = src
                    .strip_prefix('@')
                    .ok_or_else(|| Error::Parse("arrangement: file must be @path".into()))?;
                FunctionClass::HyperplaneArrangement {
                    hyperplanes: parse_arrangement(&read_file(path)?)?,
                }
            } else {
                let seed = params
                    .get("seed")
                    .map(|s| s.parse().map_err(|_| Error::Parse("arrangement: bad seed".into())))
                    .transpose()?
                    .unwrap_or(0);
                super::random_arrangement(num("lines")?, num("d")?, Seed(seed))?
            }
        }
        other => return Err(Error::Parse(format!("unknown class {other:?}"))),
    };
    class.check_params()?;
    Ok(class)
}

fn parse_params(rest: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// One hyperplane per line: `offset w_1 ... w_d`.
pub fn parse_arrangement(text: &str) -> Result<Vec<AffineFunctional>> {
    let mut out = Vec::new();
    for line in text.lines().map(|l| l.split('#').next().unwrap_or("").trim()) {
        if line.is_empty() {
            continue;
        }
        let mut nums = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse(format!("hyperplane needs offset and weights: {line:?}")));
        }
        let offset = nums.remove(0);
        out.push(AffineFunctional {
            weights: nums,
            offset,
        });
    }
    if out.windows(2).any(|w| w[0].weights.len() != w[1].weights.len()) {
        return Err(Error::Parse("hyperplanes differ in dimension".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &str) -> Result<String> {
        Err(Error::Parse("no files".into()))
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_class_spec_with("intervals:k=3", no_files).unwrap(),
            FunctionClass::IntervalUnion { k: 3 }
        );
        assert_eq!(
            parse_class_spec_with("halfspace:n=4", no_files).unwrap(),
            FunctionClass::Halfspace { n: 4 }
        );
        assert_eq!(
            parse_class_spec_with("ptf:n=5,k=2,domain=cube", no_files).unwrap(),
            FunctionClass::Ptf { n: 5, k: 2, domain: PtfDomain::Cube }
        );
        assert_eq!(
            parse_class_spec_with("symmetric:n=10", no_files).unwrap(),
            FunctionClass::SymmetricThreshold { n: 10, t: 2 }
        );
    }

    #[test]
    fn reads_poset_files() {
        let c = parse_class_spec_with("monotone:poset=@p.txt", |path| {
            assert_eq!(path, "p.txt");
            Ok("3\n0<1\n1<2\n".into())
        })
        .unwrap();
        match c {
            FunctionClass::Monotone { poset } => assert!(poset.less(0, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_class_spec_with("nope:k=1", no_files).is_err());
        assert!(parse_class_spec_with("intervals", no_files).is_err());
        assert!(parse_class_spec_with("intervals:k=x", no_files).is_err());
        assert!(parse_class_spec_with("intervals:k=0", no_files).is_err());
        assert!(parse_class_spec_with("junta:n=3,k=4", no_files).is_err());
        assert!(parse_class_spec_with("monotone:poset=p.txt", no_files).is_err());
    }

    #[test]
    fn arrangement_file_format() {
        let hs = parse_arrangement("0 1 0\n# c\n1 -1 -1\n").unwrap();
        assert_eq!(hs.len(), 2);
        assert!(parse_arrangement("0 1\n1 1 1\n").is_err());
    }
}
