//! Run configuration shared by the command-line front end.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::cohomology::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::glattice::DEFAULT_ISO_BOUND;

pub const MIN_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// largest number of sparse entries a single cohomology computation may touch
    pub budget: u128,
    pub workers: usize,
    pub cache_dir: Option<PathBuf>,
    /// use normalized bar cochains
    pub normalized: bool,
    pub iso_bound: i64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: DEFAULT_BUDGET,
            workers: default_workers(),
            cache_dir: None,
            normalized: true,
            iso_bound: DEFAULT_ISO_BOUND,
            format: Format::Text,
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.budget < MIN_BUDGET {
            return Err(Error::Invalid(format!("budget must be at least {MIN_BUDGET}, got {}", self.budget)));
        }
        if self.workers == 0 {
            return Err(Error::Invalid("workers must be at least 1".into()));
        }
        if self.iso_bound < 0 {
            return Err(Error::Invalid("iso bound must be non-negative".into()));
        }
        Ok(())
    }

    /// The cache, if one is configured here or through the environment.
    pub fn cache(&self) -> Option<Cache> {
        Cache::resolve(self.cache_dir.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert!(Config::default().validate().is_ok());
        let low = Config { budget: 999_999, ..Config::default() };
        assert!(low.validate().is_err());
        let none = Config { workers: 0, ..Config::default() };
        assert!(none.validate().is_err());
    }
}
