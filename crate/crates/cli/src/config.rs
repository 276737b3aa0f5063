//! Flat `key=value` run configuration and parameter resolution.

use std::collections::BTreeMap;
use std::fs;
use std::str::FromStr;

use tagkit::dtree::DTreeParams;
use tagkit::tbl::TblParams;

use crate::CliError;

/// Every key accepted in a config file or by `--param`.
pub const KEYS: &[&str] = &[
    "context_length",
    "min_gain",
    "eq_class_weight",
    "affix_gain",
    "max_suffix",
    "lexical_threshold",
    "contextual_threshold",
    "bigram_restriction",
    "denominator",
    "jobs",
    "analyzer",
    "policy",
    "order",
    "validate_tagset",
];

pub const DEFAULT_DENOMINATOR: usize = 8;

/// Layered settings: config file first, then `--param`, then dedicated flags.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str, origin: &str) -> Result<Settings, CliError> {
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("{origin}: line {}: expected `key=value`", idx + 1))
            })?;
            s.set(k.trim(), v.trim())
                .map_err(|m| CliError::Usage(format!("{origin}: line {}: {m}", idx + 1)))?;
        }
        Ok(s)
    }

    pub fn read(path: &str) -> Result<Settings, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Data(format!("{path}: {e}")))?;
        Settings::parse(&text, path)
    }

    /// Config file (if any) overlaid with `--param name=value` pairs.
    pub fn load(config: Option<&str>, params: &[String]) -> Result<Settings, CliError> {
        let mut s = match config {
            Some(p) => Settings::read(p)?,
            None => Settings::default(),
        };
        for p in params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--param `{p}`: expected name=value")))?;
            s.set(k.trim(), v.trim())
                .map_err(|m| CliError::Usage(format!("--param `{p}`: {m}")))?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(format!("unknown key `{key}`"));
        }
        self.values.insert(key, value.to_string());
        Ok(())
    }

    /// Applies a dedicated flag, which wins over everything else.
    pub fn flag<T: ToString>(&mut self, key: &str, value: &Option<T>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v.to_string());
        }
    }

    pub fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`"))),
        }
    }

    pub fn get_str(&self, key: &str, default: &str) -> String {
        self.values
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }

    pub fn dtree_params(&self) -> Result<DTreeParams, CliError> {
        let d = DTreeParams::default();
        let p = DTreeParams {
            context_length: self.get("context_length", d.context_length)?,
            min_gain: self.get("min_gain", d.min_gain)?,
            eq_class_weight: self.get("eq_class_weight", d.eq_class_weight)?,
            affix_gain: self.get("affix_gain", d.affix_gain)?,
            max_suffix: self.get("max_suffix", d.max_suffix)?,
        };
        p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(p)
    }

    pub fn tbl_params(&self) -> Result<TblParams, CliError> {
        let d = TblParams::default();
        Ok(TblParams {
            lexical_threshold: self.get("lexical_threshold", d.lexical_threshold)?,
            contextual_threshold: self.get("contextual_threshold", d.contextual_threshold)?,
            bigram_restriction: self.get("bigram_restriction", d.bigram_restriction)?,
        })
    }
}
