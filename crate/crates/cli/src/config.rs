//! Optional TOML defaults. Keys mirror the long flags with `-` spelled `_`,
//! one table per subcommand:
//!
//! ```toml
//! [analyze]
//! p = 3
//! r = 3
//! m = "161"
//! format = "json"
//! verify = true
//!
//! [scan]
//! p = 7
//! r = 1
//! m_from = 2
//! m_to = 2000
//! out = "scan.csv"
//! jobs = 4
//!
//! [render]
//! at = 3
//! format = "svg"
//! linear = false
//! ```

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Integers may be given as TOML integers or as decimal strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Int(i64),
    Str(String),
}

impl IntValue {
    pub fn to_bigint(&self, key: &str) -> CliResult<BigInt> {
        match self {
            IntValue::Int(v) => Ok(BigInt::from(*v)),
            IntValue::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("config key {key}: not an integer: {s:?}"))),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeConfig {
    pub p: Option<IntValue>,
    pub r: Option<u32>,
    pub m: Option<IntValue>,
    pub format: Option<String>,
    pub verify: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    pub p: Option<IntValue>,
    pub r: Option<u32>,
    pub m_from: Option<i64>,
    pub m_to: Option<i64>,
    pub residue: Option<i64>,
    pub modulus: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderConfig {
    pub p: Option<IntValue>,
    pub r: Option<u32>,
    pub m: Option<IntValue>,
    pub at: Option<IntValue>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub linear: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub analyze: AnalyzeConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub render: RenderConfig,
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Config::parse(&text).map_err(|detail| CliError::Config {
            path: path.display().to_string(),
            detail,
        })
    }

    pub fn parse(text: &str) -> Result<Config, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }
}
