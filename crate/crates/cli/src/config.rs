use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            other => bail!("unknown format {other:?} (csv, json or md)"),
        }
    }
}

/// Values from a flat `key = value` file. Blank lines and lines starting
/// with `#` are skipped; keys may use `-` or `_`.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    pub precision: Option<u32>,
    pub max_refine: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub n_max: Option<u64>,
    pub limit: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", i + 1))?;
            entries.insert(k.trim().replace('-', "_"), v.trim().to_string());
        }
        let mut cfg = Self::default();
        for (k, v) in entries {
            let bad = |e: &dyn std::fmt::Display| anyhow!("config key {k}: {e}");
            match k.as_str() {
                "precision" => cfg.precision = Some(v.parse().map_err(|e| bad(&e))?),
                "max_refine" => cfg.max_refine = Some(v.parse().map_err(|e| bad(&e))?),
                "format" => cfg.format = Some(v.parse().map_err(|e: anyhow::Error| bad(&e))?),
                "out" => cfg.out = Some(PathBuf::from(v)),
                "n_max" => cfg.n_max = Some(v.parse().map_err(|e| bad(&e))?),
                "limit" => cfg.limit = Some(v.parse().map_err(|e| bad(&e))?),
                _ => bail!("unknown config key {k:?}"),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = FileConfig::parse(
            "# defaults\nprecision = 192\nmax-refine=4\n\nformat = json\nn_max = 50\nlimit = true\n",
        )
        .unwrap();
        assert_eq!(c.precision, Some(192));
        assert_eq!(c.max_refine, Some(4));
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.n_max, Some(50));
        assert_eq!(c.limit, Some(true));
        assert_eq!(c.out, None);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("precision").is_err());
        assert!(FileConfig::parse("precision = lots").is_err());
        assert!(FileConfig::parse("format = xml").is_err());
    }
}
