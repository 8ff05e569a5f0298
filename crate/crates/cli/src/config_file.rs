//! Flat key-value config files for `run` and `bench`.
//!
//! Grammar, one entry per line: `key = value`. Blank lines and lines
//! starting with `#` are ignored. Keys are the long CLI flag names
//! without the leading dashes (e.g. `technique = PROPOSED`,
//! `train-reps = 1,3,4,6`). Command-line flags override file values.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use emgpr_core::error::{Error, Result};

pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Format {
                row: i + 1,
                reason: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Format {
                row: i + 1,
                reason: "empty key or value".into(),
            });
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(Error::Format {
                row: i + 1,
                reason: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(map)
}

/// Typed lookup helpers used while merging file values under CLI flags.
pub struct FileValues {
    map: BTreeMap<String, String>,
    allowed: &'static [&'static str],
}

impl FileValues {
    pub fn new(map: BTreeMap<String, String>, allowed: &'static [&'static str]) -> Result<Self> {
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidSpec {
                    what: "config file",
                    reason: format!("unknown key `{key}`"),
                });
            }
        }
        Ok(Self { map, allowed })
    }

    pub fn empty() -> Self {
        Self {
            map: BTreeMap::new(),
            allowed: &[],
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        debug_assert!(self.allowed.is_empty() || self.allowed.contains(&key));
        self.map.get(key).map(|s| s.as_str())
    }

    pub fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(text) => text.parse().map(Some).map_err(|_| Error::InvalidSpec {
                what: "config file",
                reason: format!("cannot parse `{text}` for key `{key}`"),
            }),
        }
    }

    /// Booleans accept true/false/on/off/1/0.
    pub fn flag(&self, key: &str) -> Result<Option<bool>> {
        match self.raw(key) {
            None => Ok(None),
            Some("true") | Some("on") | Some("1") | Some("yes") => Ok(Some(true)),
            Some("false") | Some("off") | Some("0") | Some("no") => Ok(Some(false)),
            Some(other) => Err(Error::InvalidSpec {
                what: "config file",
                reason: format!("cannot parse `{other}` as a flag for key `{key}`"),
            }),
        }
    }
}
