//! JSON seed configurations and their validation.
//!
//! Mutation indices and permutations are 1-based in configuration files and
//! 0-based everywhere past [`SeedConfig::prepare`].

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use gencluster::arith::{parse_rational, Rational};
use gencluster::dilog::{DilogParams, IdentityForm};
use gencluster::fixtures::{self, Fixture};
use gencluster::quantum::CoefficientRule;
use gencluster::seed::{skew_symmetrizer, GCASeed, IntMatrix, SigmaSpec, SymmetrizerData};
use gencluster::semifield::Generators;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub forms: Vec<IdentityForm>,
    pub tolerance: f64,
    pub quantum_n: u32,
    pub quantum_rule: CoefficientRule,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            forms: vec![IdentityForm::Gid5, IdentityForm::Gid6],
            tolerance: 1e-8,
            quantum_n: 6,
            quantum_rule: CoefficientRule::default(),
            trials: 20,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub b: IntMatrix,
    #[serde(default)]
    pub r: Option<Vec<i64>>,
    /// Full tuples `z_i = (z_{i,0}, ..., z_{i,d_i})`: `"1"` at both ends,
    /// interior entries either a rational `"p/q"` or a symbol name.
    #[serde(default)]
    pub z: Option<Vec<Vec<String>>>,
    pub ks: Vec<usize>,
    #[serde(default)]
    pub sigma: Option<Vec<usize>>,
    #[serde(default)]
    pub options: Options,
}

/// A validated configuration with 0-based indices.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub name: String,
    pub seed: GCASeed,
    pub ks: Vec<usize>,
    pub sigma: SigmaSpec,
    pub sym: SymmetrizerData,
    pub options: Options,
}

enum ZEntry {
    Value(Rational),
    Symbol(String),
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic())
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl SeedConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// A builtin fixture name, or else a path to a JSON file.
    pub fn load(spec: &str) -> Result<Self, ConfigError> {
        if let Some(f) = fixtures::builtin(spec) {
            if !Path::new(spec).exists() {
                return Ok(Self::from_fixture(&f));
            }
        }
        let text = std::fs::read_to_string(spec).map_err(|e| ConfigError::Io {
            path: spec.to_string(),
            message: format!(
                "{e}; builtin fixtures are {}",
                fixtures::BUILTIN_NAMES.join(", ")
            ),
        })?;
        Self::from_json(&text)
    }

    pub fn from_fixture(f: &Fixture) -> Self {
        let z = f
            .z_names
            .iter()
            .map(|names| {
                let mut row = vec!["1".to_string()];
                row.extend(names.iter().cloned());
                row.push("1".to_string());
                row
            })
            .collect();
        SeedConfig {
            name: Some(f.name.to_string()),
            rank: f.degrees.len(),
            degrees: f.degrees.clone(),
            b: f.b.clone(),
            r: None,
            z: Some(z),
            ks: f.ks.iter().map(|k| k + 1).collect(),
            sigma: f.sigma.as_ref().map(|s| s.iter().map(|i| i + 1).collect()),
            options: Options {
                quantum_n: f.quantum_n,
                ..Options::default()
            },
        }
    }

    fn check_shape(&self) -> Result<(), ConfigError> {
        let n = self.rank;
        if n == 0 {
            return Err(invalid("rank", "must be positive"));
        }
        if self.degrees.len() != n {
            return Err(invalid(
                "degrees",
                format!("has {} entries, expected {n}", self.degrees.len()),
            ));
        }
        if let Some(i) = self.degrees.iter().position(|&d| d == 0) {
            return Err(invalid(format!("degrees[{i}]"), "must be positive"));
        }
        if self.b.len() != n {
            return Err(invalid("b", format!("has {} rows, expected {n}", self.b.len())));
        }
        if let Some(i) = self.b.iter().position(|row| row.len() != n) {
            return Err(invalid(format!("b[{i}]"), format!("expected {n} entries")));
        }
        Ok(())
    }

    fn symmetrizer(&self) -> Result<SymmetrizerData, ConfigError> {
        let minimal = skew_symmetrizer(&self.b)
            .map_err(|_| invalid("b", "not skew-symmetrizable"))?;
        match &self.r {
            None => Ok(minimal),
            Some(r) => {
                let data = SymmetrizerData::from_r(r.clone());
                if data.symmetrizes(&self.b) {
                    Ok(data)
                } else {
                    Err(invalid("r", "not a positive skew-symmetrizer of b"))
                }
            }
        }
    }

    fn z_entries(&self) -> Result<Vec<Vec<ZEntry>>, ConfigError> {
        let Some(z) = &self.z else {
            return Ok(self
                .degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    (1..d)
                        .map(|s| ZEntry::Symbol(format!("z{}_{}", i + 1, s)))
                        .collect()
                })
                .collect());
        };
        if z.len() != self.rank {
            return Err(invalid("z", format!("has {} tuples, expected {}", z.len(), self.rank)));
        }
        let reserved: BTreeSet<String> = (1..=self.rank)
            .flat_map(|i| [format!("y{i}"), format!("x{i}")])
            .chain(["q".to_string()])
            .collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(self.rank);
        for (i, (row, &d)) in z.iter().zip(&self.degrees).enumerate() {
            if row.len() != d as usize + 1 {
                return Err(invalid(
                    format!("z[{i}]"),
                    format!("has {} entries, expected d + 1 = {}", row.len(), d + 1),
                ));
            }
            for s in [0, d as usize] {
                if row[s].trim() != "1" {
                    return Err(invalid(format!("z[{i}][{s}]"), "endpoints must be \"1\""));
                }
            }
            let mut entries = Vec::new();
            for (s, text) in row.iter().enumerate().take(d as usize).skip(1) {
                let loc = format!("z[{i}][{s}]");
                let text = text.trim();
                if let Some(v) = parse_rational(text) {
                    if v <= Rational::from_integer(0.into()) {
                        return Err(invalid(loc, "must be positive"));
                    }
                    entries.push(ZEntry::Value(v));
                } else if is_identifier(text) {
                    if reserved.contains(text) {
                        return Err(invalid(loc, format!("name {text} is reserved")));
                    }
                    if !seen.insert(text.to_string()) {
                        return Err(invalid(loc, format!("name {text} is used twice")));
                    }
                    entries.push(ZEntry::Symbol(text.to_string()));
                } else {
                    return Err(invalid(loc, "expected a rational \"p/q\" or a symbol name"));
                }
            }
            if entries.iter().all(|e| matches!(e, ZEntry::Value(_))) {
                let mut full = vec![Rational::from_integer(1.into())];
                full.extend(entries.iter().map(|e| match e {
                    ZEntry::Value(v) => v.clone(),
                    ZEntry::Symbol(_) => unreachable!(),
                }));
                full.push(Rational::from_integer(1.into()));
                let p = DilogParams::new(full).map_err(|e| invalid(format!("z[{i}]"), e.to_string()))?;
                if !p.check_generic() {
                    return Err(invalid(format!("z[{i}]"), "violates the generic condition"));
                }
            }
            out.push(entries);
        }
        Ok(out)
    }

    fn zero_based(&self, field: &str, v: &[usize]) -> Result<Vec<usize>, ConfigError> {
        v.iter()
            .enumerate()
            .map(|(t, &k)| {
                if (1..=self.rank).contains(&k) {
                    Ok(k - 1)
                } else {
                    Err(invalid(format!("{field}[{t}]"), format!("{k} is not in 1..={}", self.rank)))
                }
            })
            .collect()
    }

    fn check_options(&self) -> Result<(), ConfigError> {
        let o = &self.options;
        if !(o.tolerance > 0.0) {
            return Err(invalid("options.tolerance", "must be positive"));
        }
        if o.trials == 0 {
            return Err(invalid("options.trials", "must be at least 1"));
        }
        if o.quantum_n == 0 {
            return Err(invalid("options.quantum_n", "must be at least 1"));
        }
        Ok(())
    }

    pub fn prepare(&self) -> Result<Prepared, ConfigError> {
        self.check_shape()?;
        let sym = self.symmetrizer()?;
        let entries = self.z_entries()?;
        let ks = self.zero_based("ks", &self.ks)?;
        let sigma = match &self.sigma {
            None => SigmaSpec::Search,
            Some(s) => {
                let s0 = self.zero_based("sigma", s)?;
                let distinct: BTreeSet<_> = s0.iter().collect();
                if s0.len() != self.rank || distinct.len() != self.rank {
                    return Err(invalid("sigma", "not a permutation of 1..=rank"));
                }
                SigmaSpec::Given(s0)
            }
        };
        self.check_options()?;

        let names: Vec<Vec<String>> = entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(s, e)| match e {
                        ZEntry::Symbol(name) => name.clone(),
                        ZEntry::Value(_) => format!("z{}_{}", i + 1, s + 1),
                    })
                    .collect()
            })
            .collect();
        let values: Vec<Vec<Option<Rational>>> = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        ZEntry::Value(v) => Some(v),
                        ZEntry::Symbol(_) => None,
                    })
                    .collect()
            })
            .collect();
        let gens = Arc::new(Generators::with_z_names(&self.degrees, Some(&names)));
        let seed = GCASeed::with_z_values(self.b.clone(), gens, &values)
            .map_err(|e| invalid("seed", e.to_string()))?;
        Ok(Prepared {
            name: self.name.clone().unwrap_or_else(|| "config".to_string()),
            seed,
            ks,
            sigma,
            sym,
            options: self.options.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2_json() -> String {
        r#"{
            "rank": 2,
            "degrees": [2, 1],
            "b": [[0, -1], [1, 0]],
            "z": [["1", "alpha", "1"], ["1", "1"]],
            "ks": [1, 2, 1, 2, 1, 2],
            "sigma": [1, 2]
        }"#
        .to_string()
    }

    fn location(err: ConfigError) -> String {
        match err {
            ConfigError::Invalid { location, .. } => location,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_and_prepares() {
        let c = SeedConfig::from_json(&b2_json()).unwrap();
        assert_eq!(c.options, Options::default());
        let p = c.prepare().unwrap();
        assert_eq!(p.ks, vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(p.sigma, SigmaSpec::Given(vec![0, 1]));
        assert_eq!(p.seed.generators().names()[2], "alpha");
    }

    #[test]
    fn fixture_round_trip() {
        for name in fixtures::BUILTIN_NAMES {
            let c = SeedConfig::load(name).unwrap();
            let back = SeedConfig::from_json(&c.to_json()).unwrap();
            assert_eq!(c, back);
            back.prepare().unwrap();
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.b = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(location(c.prepare().unwrap_err()), "b");

        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.ks.push(3);
        assert_eq!(location(c.prepare().unwrap_err()), "ks[6]");

        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.z = Some(vec![vec!["1".into(), "3".into(), "1".into()], vec!["1".into(), "1".into()]]);
        assert_eq!(location(c.prepare().unwrap_err()), "z[0]");

        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.z = Some(vec![vec!["2".into(), "a".into(), "1".into()], vec!["1".into(), "1".into()]]);
        assert_eq!(location(c.prepare().unwrap_err()), "z[0][0]");

        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.sigma = Some(vec![1, 1]);
        assert_eq!(location(c.prepare().unwrap_err()), "sigma");

        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.r = Some(vec![1, 2]);
        assert_eq!(location(c.prepare().unwrap_err()), "r");
    }

    #[test]
    fn parse_error_has_position() {
        match SeedConfig::from_json("{\n  \"rank\": 2,\n  \"degrees\": [1, 1,\n") {
            Err(ConfigError::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn numeric_z_become_constants() {
        let mut c = SeedConfig::from_json(&b2_json()).unwrap();
        c.z = Some(vec![vec!["1".into(), "1/2".into(), "1".into()], vec!["1".into(), "1".into()]]);
        let p = c.prepare().unwrap();
        assert_eq!(p.seed.z[0][1].display(), "1/2");
    }
}
