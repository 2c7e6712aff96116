//! Flat key-value configuration with dotted section names.
//!
//! A config file is lines of `section.key = value`, `#` comments allowed.
//! `--set key=value` overrides stack on top in order. Every key must be
//! consumed by the selected subcommand: leftovers are rejected with the
//! offending field path, so typos never silently fall back to defaults.
//! Every resolved value (explicit or default) is recorded for the run
//! manifest.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Config {
    pub fn new() -> Self {
        Config::default()
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = Config::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            config
                .values
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(config)
    }

    /// Applies a `--set key=value` override.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("--set `{assignment}`: expected key=value")))?;
        self.values
            .insert(key.trim().to_string(), value.trim().to_string());
        Ok(())
    }

    pub fn insert(&mut self, key: &str, value: String) {
        self.values.insert(key.to_string(), value);
    }

    fn record(&mut self, key: &str, value: String) {
        self.resolved.insert(key.to_string(), value);
    }

    pub fn take_string(&mut self, key: &str, default: &str) -> String {
        let value = self
            .values
            .remove(key)
            .unwrap_or_else(|| default.to_string());
        self.record(key, value.clone());
        value
    }

    pub fn take_f64(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let value = match self.values.remove(key) {
            Some(raw) => raw
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("{key}: `{raw}` is not a number")))?,
            None => default,
        };
        if !value.is_finite() {
            return Err(ConfigError(format!("{key}: must be finite, got {value}")));
        }
        self.record(key, value.to_string());
        Ok(value)
    }

    pub fn take_usize(&mut self, key: &str, default: usize) -> Result<usize, ConfigError> {
        let value = match self.values.remove(key) {
            Some(raw) => raw
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("{key}: `{raw}` is not a whole number")))?,
            None => default,
        };
        self.record(key, value.to_string());
        Ok(value)
    }

    pub fn take_bool(&mut self, key: &str, default: bool) -> Result<bool, ConfigError> {
        let value = match self.values.remove(key) {
            Some(raw) => match raw.as_str() {
                "true" | "1" | "yes" => true,
                "false" | "0" | "no" => false,
                _ => return Err(ConfigError(format!("{key}: `{raw}` is not a boolean"))),
            },
            None => default,
        };
        self.record(key, value.to_string());
        Ok(value)
    }

    /// Comma-separated list of numbers.
    pub fn take_f64_list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>, ConfigError> {
        let list = match self.values.remove(key) {
            Some(raw) => raw
                .split(',')
                .map(|item| {
                    let item = item.trim();
                    item.parse::<f64>()
                        .map_err(|_| ConfigError(format!("{key}: `{item}` is not a number")))
                })
                .collect::<Result<Vec<f64>, _>>()?,
            None => default.to_vec(),
        };
        let rendered: Vec<String> = list.iter().map(|v| v.to_string()).collect();
        self.record(key, rendered.join(","));
        Ok(list)
    }

    /// Call after the subcommand consumed its keys; anything left is a typo
    /// or a key for another subcommand.
    pub fn finish(self) -> Result<BTreeMap<String, String>, ConfigError> {
        if let Some(key) = self.values.keys().next() {
            return Err(ConfigError(format!("unknown key `{key}`")));
        }
        Ok(self.resolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_consume() {
        let mut cfg = Config::new();
        cfg.set("relax.case=2").unwrap();
        cfg.set("relax.n = 4").unwrap();
        assert_eq!(cfg.take_usize("relax.case", 1).unwrap(), 2);
        assert_eq!(cfg.take_f64("relax.n", 0.5).unwrap(), 4.0);
        assert_eq!(cfg.take_f64("relax.k0", 1.0).unwrap(), 1.0);
        let resolved = cfg.finish().unwrap();
        assert_eq!(resolved["relax.k0"], "1");
    }

    #[test]
    fn leftover_key_is_an_error() {
        let mut cfg = Config::new();
        cfg.set("relax.typo=1").unwrap();
        assert!(cfg.finish().unwrap_err().0.contains("relax.typo"));
    }

    #[test]
    fn list_parsing() {
        let mut cfg = Config::new();
        cfg.set("oscillate.gammas = 0, 0.2 ,0.6").unwrap();
        let list = cfg.take_f64_list("oscillate.gammas", &[]).unwrap();
        assert_eq!(list, vec![0.0, 0.2, 0.6]);
    }
}
