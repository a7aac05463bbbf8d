//! Flat JSON config: `{"seed": 7, "trials": 50, "n": 150}`. Command-line
//! flags win over config values, which win over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::formats::read_json;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config(BTreeMap<String, serde_json::Value>);

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        Ok(Config(read_json(path)?))
    }

    pub fn from_json(text: &str) -> Result<Config> {
        Ok(Config(serde_json::from_str(text)?))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        self.0
            .get(key)
            .map(|v| {
                serde_json::from_value(v.clone())
                    .map_err(|e| Error::Usage(format!("config key {key:?}: {e}")))
            })
            .transpose()
    }

    /// `cli`, else the config value, else `default`.
    pub fn pick<T: DeserializeOwned>(&self, cli: Option<T>, key: &str, default: T) -> Result<T> {
        Ok(match cli {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    /// Like [`Config::pick`] with no default.
    pub fn require<T: DeserializeOwned>(&self, cli: Option<T>, key: &str) -> Result<T> {
        match cli {
            Some(v) => Ok(v),
            None => self
                .get(key)?
                .ok_or_else(|| Error::Usage(format!("missing required value --{key}"))),
        }
    }
}
