//! Optional `key=value` configuration for the command-line tool.
//!
//! ```text
//! # budgets
//! memory_budget_states = 200000000
//! output_dir = results
//! threads = 0
//! ```
//!
//! The file is found through the `DSM_CONFIG` environment variable (or the
//! `--config` flag); command-line flags override it.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::orbit::DEFAULT_STATE_BUDGET;

pub const CONFIG_ENV: &str = "DSM_CONFIG";

/// Smallest accepted state budget.
pub const MIN_STATE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub memory_budget_states: u64,
    pub output_dir: PathBuf,
    /// Worker threads; 0 lets the pool pick.
    pub threads: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig { memory_budget_states: DEFAULT_STATE_BUDGET, output_dir: PathBuf::from("."), threads: 0 }
    }
}

impl CliConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = CliConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| {
                v.replace('_', "")
                    .parse::<u64>()
                    .map_err(|_| Error::parse(format!("line {}: '{v}' is not a non-negative integer", n + 1)))
            };
            match key {
                "memory_budget_states" => cfg.memory_budget_states = number(value)?,
                "output_dir" => cfg.output_dir = PathBuf::from(value),
                "threads" => cfg.threads = number(value)? as usize,
                other => return Err(Error::parse(format!("line {}: unknown key '{other}'", n + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        CliConfig::parse(&fs::read_to_string(path)?)
    }

    /// Config named by `DSM_CONFIG`, or the defaults when it is unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => CliConfig::load(Path::new(&path)),
            None => Ok(CliConfig::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory_budget_states < MIN_STATE_BUDGET {
            return Err(Error::invalid(format!(
                "memory_budget_states must be at least {MIN_STATE_BUDGET}, got {}",
                self.memory_budget_states
            )));
        }
        Ok(())
    }

    /// Relative output paths land under `output_dir`.
    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.output_dir.join(path)
        }
    }
}
