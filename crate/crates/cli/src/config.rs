//! Flat `key = value` configuration files. Command-line flags take precedence over file values.

use std::collections::BTreeMap;
use std::path::Path;

use beatty_zeta::continuation::ContinuationConfig;
use beatty_zeta::{Error, Result};

const CONTINUATION_KEYS: &[&str] = &[
    "u_min",
    "u_switch",
    "k_max",
    "quad_tol",
    "eps_exponent",
    "sigma_min",
    "direct_margin",
    "max_depth",
    "direct_tol",
];

const FLAG_KEYS: &[&str] = &[
    "alpha", "r", "q", "s", "u", "v", "w", "z", "n", "k", "m", "eps", "depth", "kmax", "threshold", "method", "tol",
    "abel_terms", "re", "im", "suite", "only", "output", "threads",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value, got '{raw}'", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !CONTINUATION_KEYS.contains(&key.as_str()) && !FLAG_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse(format!("line {}: unknown key '{key}'", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

/// File values plus `--set` overrides.
#[derive(Debug, Default, Clone)]
pub struct Settings {
    file: BTreeMap<String, String>,
    overrides: BTreeMap<String, String>,
}

impl Settings {
    pub fn load(path: Option<&Path>, sets: &[String]) -> Result<Self> {
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", p.display())))?;
                parse_pairs(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut overrides = BTreeMap::new();
        for s in sets {
            let (k, v) = s.split_once('=').ok_or_else(|| Error::Parse(format!("--set expects KEY=VALUE, got '{s}'")))?;
            let key = k.trim().replace('-', "_");
            if !CONTINUATION_KEYS.contains(&key.as_str()) {
                return Err(Error::Parse(format!("--set: unknown continuation key '{key}'")));
            }
            overrides.insert(key, v.trim().to_string());
        }
        Ok(Self { file, overrides })
    }

    /// The flag value if given, else the file value.
    pub fn value(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).cloned())
    }

    pub fn required(&self, flag: &Option<String>, key: &str) -> Result<String> {
        self.value(flag, key).ok_or_else(|| Error::Parse(format!("missing --{}", key.replace('_', "-"))))
    }

    /// Continuation settings: defaults, then the file, then `--set`.
    ///
    /// Raising `u_min` alone also raises `u_switch` so the pair stays ordered.
    pub fn continuation(&self) -> Result<ContinuationConfig> {
        let mut cfg = ContinuationConfig::default();
        let mut merged: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in self.file.iter().chain(self.overrides.iter()) {
            if CONTINUATION_KEYS.contains(&k.as_str()) {
                merged.insert(k, v);
            }
        }
        for (k, v) in &merged {
            cfg.set(k, v)?;
        }
        if merged.contains_key("u_min") && !merged.contains_key("u_switch") {
            cfg.u_switch = cfg.u_switch.max(cfg.u_min);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
