//! Flat `key=value` configuration files and flag/file/default resolution.
//!
//! Precedence: command-line flags override file entries, file entries
//! override built-in defaults.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Parsed configuration file: bare `key=value` lines, `#` comments and blank
/// lines allowed.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("config file {}: {e}", path.display())))?;
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::io(format!(
                    "config file {}: line {} is not key=value",
                    path.display(),
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Resolve a scalar setting: flag, then file, then default.
pub fn resolve<T>(flag: Option<T>, file: &ConfigFile, key: &str, default: T) -> Result<T, CliError>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get(key) {
        Some(raw) => raw
            .parse::<T>()
            .map_err(|e| CliError::io(format!("config key {key}: {e}"))),
        None => Ok(default),
    }
}

/// Resolve an optional setting with no default.
pub fn resolve_opt<T>(
    flag: Option<T>,
    file: &ConfigFile,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| CliError::io(format!("config key {key}: {e}"))),
        None => Ok(None),
    }
}

/// Resolve a string setting that is parsed later (lists, snr values).
pub fn resolve_raw(
    flag: Option<String>,
    file: &ConfigFile,
    key: &str,
) -> Option<String> {
    flag.or_else(|| file.get(key).map(str::to_string))
}

/// Parse a comma-separated list of floats.
pub fn parse_f64_list(raw: &str, what: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::io(format!("{what}: bad number {s:?}")))
        })
        .collect()
}

/// Parse an SNR value: a real number of decibels or `inf` for noise-free.
pub fn parse_snr(raw: &str) -> Result<f64, CliError> {
    match raw.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|_| CliError::io(format!("snr: expected a number or `inf`, got {raw:?}"))),
    }
}
