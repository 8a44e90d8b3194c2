use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Settings read from `--config`; command-line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// p-adic precision N.
    pub precision: Option<u32>,
    /// Total-degree cutoff D for truncated series.
    pub degree: Option<u32>,
    pub max_index: Option<u32>,
    pub height_bound: Option<u64>,
    pub minkowski_ceiling: Option<f64>,
    pub workers: Option<usize>,
    pub chunk_size: Option<usize>,
    pub format: Option<String>,
    pub ledger: Option<PathBuf>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        RunConfig::parse(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)))
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("precision", self.precision.map(u64::from)),
            ("degree", self.degree.map(u64::from)),
            ("max_index", self.max_index.map(u64::from)),
            ("height_bound", self.height_bound),
            ("workers", self.workers.map(|w| w as u64)),
            ("chunk_size", self.chunk_size.map(|w| w as u64)),
        ];
        for (name, v) in positive {
            if v == Some(0) {
                return Err(ConfigError(format!("{name} must be positive")));
            }
        }
        if let Some(c) = self.minkowski_ceiling {
            if !(c.is_finite() && c > 0.0) {
                return Err(ConfigError("minkowski_ceiling must be positive".into()));
            }
        }
        if let Some(f) = &self.format {
            if f != "json" && f != "text" {
                return Err(ConfigError(format!("format must be \"json\" or \"text\", not {f:?}")));
            }
        }
        Ok(())
    }
}
