//! Flat `key = value` configuration files with `#` comments.

use std::collections::BTreeMap;

use crate::error::{HarnessError, Result};

pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", no + 1)))?;
        let key = k.trim();
        if key.is_empty() {
            return Err(HarnessError::Config(format!("line {}: empty key", no + 1)));
        }
        if out.insert(key.to_string(), v.trim().to_string()).is_some() {
            return Err(HarnessError::Config(format!("line {}: repeated key {key:?}", no + 1)));
        }
    }
    Ok(out)
}

/// Everything a sweep needs. Keys: `class`, `generator`, `tester`, `eps`,
/// `grid` (comma-separated sample sizes), `trials`, `target`, `seed`,
/// `threads`, and optionally `vc` / `lvc` to fill the record columns when
/// they are too expensive to compute.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub class: Option<String>,
    pub generator: String,
    pub tester: Option<String>,
    pub epsilon: f64,
    pub grid: Vec<usize>,
    pub trials: usize,
    pub target: f64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub vc: Option<usize>,
    pub lvc: Option<usize>,
}

pub const DEFAULT_TARGET: f64 = 2.0 / 3.0;
pub const MIN_TRIALS: usize = 30;

impl SweepConfig {
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        const KEYS: [&str; 11] = [
            "class", "generator", "tester", "eps", "grid", "trials", "target", "seed", "threads", "vc", "lvc",
        ];
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(HarnessError::Config(format!("unknown key {k:?}")));
        }
        let cfg = Self {
            class: map.get("class").cloned(),
            generator: map
                .get("generator")
                .cloned()
                .ok_or_else(|| HarnessError::Config("missing key generator".into()))?,
            tester: map.get("tester").cloned(),
            epsilon: required(map, "eps")?,
            grid: parse_grid(map.get("grid").ok_or_else(|| HarnessError::Config("missing key grid".into()))?)?,
            trials: required(map, "trials")?,
            target: optional(map, "target")?.unwrap_or(DEFAULT_TARGET),
            seed: optional(map, "seed")?.unwrap_or(0),
            threads: optional(map, "threads")?,
            vc: optional(map, "vc")?,
            lvc: optional(map, "lvc")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() || self.grid.windows(2).any(|w| w[0] >= w[1]) || self.grid[0] == 0 {
            return Err(HarnessError::Config("grid must be positive and strictly increasing".into()));
        }
        if self.trials < MIN_TRIALS {
            return Err(HarnessError::Config(format!("trials must be at least {MIN_TRIALS}")));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(HarnessError::Config("eps must lie in (0, 1)".into()));
        }
        if !(self.target > 0.0 && self.target < 1.0) {
            return Err(HarnessError::Config("target must lie in (0, 1)".into()));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be positive".into()));
        }
        Ok(())
    }
}

pub fn parse_grid(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| HarnessError::Config(format!("bad grid entry {t:?}")))
        })
        .collect()
}

fn optional<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| HarnessError::Config(format!("bad value {v:?} for {key}")))
        })
        .transpose()
}

fn required<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T> {
    optional(map, key)?.ok_or_else(|| HarnessError::Config(format!("missing key {key}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_validation() {
        let text = "# sweep\nclass = intervals:k=1\ngenerator = ssd:domain=line:20 # trailing\neps=0.1\ngrid=1,2,4\ntrials=30\n";
        let map = parse_key_values(text).unwrap();
        let cfg = SweepConfig::from_map(&map).unwrap();
        assert_eq!(cfg.grid, vec![1, 2, 4]);
        assert_eq!(cfg.target, DEFAULT_TARGET);

        let mut bad = map.clone();
        bad.insert("grid".into(), "4,2".into());
        assert!(SweepConfig::from_map(&bad).is_err());
        let mut bad = map.clone();
        bad.insert("trials".into(), "29".into());
        assert!(SweepConfig::from_map(&bad).is_err());
        let mut bad = map;
        bad.insert("colour".into(), "red".into());
        assert!(SweepConfig::from_map(&bad).is_err());
        assert!(parse_key_values("a = 1\na = 2\n").is_err());
    }
}
