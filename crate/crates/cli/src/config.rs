//! Pipeline settings. Later sources win: defaults, then the `key=value`
//! file, then `GORLAB_*` environment variables, then command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

pub const KEYS: [&str; 12] = [
    "n",
    "nx",
    "ny",
    "lie_max_degree",
    "presentation_max_degree",
    "j197",
    "j199",
    "ideal",
    "eta",
    "prime_field",
    "parallel",
    "format",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Where a data file comes from: the copy compiled into the binary, or a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin,
    File(PathBuf),
}

impl Source {
    pub fn read(&self, builtin: &'static str) -> Result<String> {
        match self {
            Source::Builtin => Ok(builtin.to_string()),
            Source::File(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// univariate truncation
    pub n: usize,
    pub nx: usize,
    pub ny: usize,
    pub lie_max_degree: usize,
    pub presentation_max_degree: u64,
    pub j197: Source,
    pub j199: Source,
    pub ideal: Source,
    pub eta: Source,
    pub prime_field: bool,
    pub parallel: bool,
    pub format: Format,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            n: 20,
            nx: 12,
            ny: 24,
            lie_max_degree: 7,
            presentation_max_degree: 300,
            j197: Source::Builtin,
            j199: Source::Builtin,
            ideal: Source::Builtin,
            eta: Source::Builtin,
            prime_field: false,
            parallel: false,
            format: Format::Text,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => bail!("{key}: expected a boolean, got {v:?}"),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| anyhow::anyhow!("{key}: expected a number, got {v:?}"))
}

fn parse_source(v: &str, base: Option<&Path>) -> Source {
    if v.is_empty() || v == "builtin" {
        return Source::Builtin;
    }
    let p = PathBuf::from(v);
    match base {
        Some(dir) if p.is_relative() => Source::File(dir.join(p)),
        _ => Source::File(p),
    }
}

impl PipelineConfig {
    /// Sets one key. Relative paths in a config file resolve against the
    /// file's directory (`base`).
    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<()> {
        let v = value.trim();
        match key {
            "n" => self.n = parse_num(key, v)?,
            "nx" => self.nx = parse_num(key, v)?,
            "ny" => self.ny = parse_num(key, v)?,
            "lie_max_degree" => self.lie_max_degree = parse_num(key, v)?,
            "presentation_max_degree" => self.presentation_max_degree = parse_num(key, v)?,
            "j197" => self.j197 = parse_source(v, base),
            "j199" => self.j199 = parse_source(v, base),
            "ideal" => self.ideal = parse_source(v, base),
            "eta" => self.eta = parse_source(v, base),
            "prime_field" => self.prime_field = parse_bool(key, v)?,
            "parallel" => self.parallel = parse_bool(key, v)?,
            "format" => {
                self.format = match v {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => bail!("format: expected text or json, got {v:?}"),
                }
            }
            _ => bail!("unknown config key {key:?}"),
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let base = path.parent();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), i + 1);
            };
            self.set(k.trim(), v, base).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        }
        Ok(())
    }

    pub fn apply_env(&mut self, vars: &BTreeMap<String, String>) -> Result<()> {
        for key in KEYS {
            let name = format!("GORLAB_{}", key.to_ascii_uppercase());
            if let Some(v) = vars.get(&name) {
                self.set(key, v, None).with_context(|| format!("environment variable {name}"))?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.nx == 0 || self.ny == 0 || self.lie_max_degree == 0 || self.presentation_max_degree == 0
        {
            bail!("truncation orders and degree caps must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let dir = std::env::temp_dir().join(format!("gorlab-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("run.cfg");
        std::fs::write(&file, "# caps\nlie_max_degree = 5\nj197 = rel/J197.rel\nformat=json\n").unwrap();
        let mut cfg = PipelineConfig::default();
        cfg.apply_file(&file).unwrap();
        assert_eq!(cfg.lie_max_degree, 5);
        assert_eq!(cfg.j197, Source::File(dir.join("rel/J197.rel")));
        assert_eq!(cfg.format, Format::Json);
        let env = BTreeMap::from([("GORLAB_LIE_MAX_DEGREE".to_string(), "3".to_string())]);
        cfg.apply_env(&env).unwrap();
        assert_eq!(cfg.lie_max_degree, 3);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.set("colour", "red", None).is_err());
        assert!(cfg.set("n", "-1", None).is_err());
        assert!(cfg.set("parallel", "maybe", None).is_err());
        cfg.set("n", "0", None).unwrap();
        assert!(cfg.validate().is_err());
    }
}
