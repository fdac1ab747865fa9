//! `RunConfig` resolution: flags, then `CYCLOBAR_*` environment variables,
//! then a `key = value` config file, then defaults.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cyclobar_core::bar::Budget;
use cyclobar_core::witt::is_prime;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Md,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "md" | "markdown" => Ok(Self::Md),
            other => Err(CliError::Usage(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
            Self::Md => "md",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: u64,
    pub r_max: u64,
    pub max_weight: usize,
    pub format: Format,
    /// Where Witt structure polynomials are persisted; `None` keeps them in
    /// memory only.
    pub cache_dir: Option<PathBuf>,
    /// Largest number of cells allowed in one chain degree.
    pub budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let b = Budget::default();
        Self {
            prime: 2,
            r_max: 10,
            max_weight: b.max_weight,
            format: Format::Md,
            cache_dir: None,
            budget: b.max_cells,
        }
    }
}

/// One layer of optional settings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub prime: Option<u64>,
    pub r_max: Option<u64>,
    pub max_weight: Option<usize>,
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<usize>,
}

pub const KEYS: [&str; 6] = ["prime", "r_max", "max_weight", "format", "cache_dir", "budget"];

fn parse<T: FromStr>(key: &str, value: &str, origin: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{origin}: invalid value `{value}` for {key}")))
}

impl Settings {
    fn set(&mut self, key: &str, value: &str, origin: &str) -> Result<(), CliError> {
        match key {
            "prime" => self.prime = Some(parse(key, value, origin)?),
            "r_max" => self.r_max = Some(parse(key, value, origin)?),
            "max_weight" => self.max_weight = Some(parse(key, value, origin)?),
            "format" => self.format = Some(value.parse()?),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value.trim())),
            "budget" => self.budget = Some(parse(key, value, origin)?),
            _ => return Err(CliError::Usage(format!("{origin}: unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Reads `CYCLOBAR_<KEY>` for every key.
    pub fn from_env(env: impl Fn(&str) -> Option<String>) -> Result<Self, CliError> {
        let mut s = Self::default();
        for key in KEYS {
            let var = format!("CYCLOBAR_{}", key.to_ascii_uppercase());
            if let Some(v) = env(&var) {
                s.set(key, &v, &var)?;
            }
        }
        Ok(s)
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn from_config_text(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut s = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{origin}:{}: expected key = value", n + 1)))?;
            s.set(k.trim(), v, &format!("{origin}:{}", n + 1))?;
        }
        Ok(s)
    }

    pub fn from_config_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_config_text(&text, &path.display().to_string())
    }

    /// Fills every unset field from `lower`.
    pub fn or(self, lower: Settings) -> Settings {
        Settings {
            prime: self.prime.or(lower.prime),
            r_max: self.r_max.or(lower.r_max),
            max_weight: self.max_weight.or(lower.max_weight),
            format: self.format.or(lower.format),
            cache_dir: self.cache_dir.or(lower.cache_dir),
            budget: self.budget.or(lower.budget),
        }
    }
}

impl RunConfig {
    /// Merges the layers in precedence order and validates the result. The
    /// config file is `config_file`, or else `CYCLOBAR_CONFIG` if set.
    pub fn resolve(
        flags: Settings,
        env: impl Fn(&str) -> Option<String>,
        config_file: Option<&Path>,
    ) -> Result<Self, CliError> {
        let env_layer = Settings::from_env(&env)?;
        let file_path = config_file.map(Path::to_path_buf).or_else(|| env("CYCLOBAR_CONFIG").map(PathBuf::from));
        let file_layer = match file_path {
            Some(p) => Settings::from_config_file(&p)?,
            None => Settings::default(),
        };
        let s = flags.or(env_layer).or(file_layer);
        let d = Self::default();
        let cfg = Self {
            prime: s.prime.unwrap_or(d.prime),
            r_max: s.r_max.unwrap_or(d.r_max),
            max_weight: s.max_weight.unwrap_or(d.max_weight),
            format: s.format.unwrap_or(d.format),
            cache_dir: s.cache_dir.or(d.cache_dir),
            budget: s.budget.unwrap_or(d.budget),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !is_prime(self.prime) {
            return Err(CliError::Usage(format!("{} is not prime", self.prime)));
        }
        if self.budget == 0 || self.max_weight == 0 {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        Ok(())
    }

    pub fn bar_budget(&self) -> Budget {
        Budget {
            max_weight: self.max_weight,
            max_cells: self.budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn defaults() {
        assert_eq!(RunConfig::resolve(Settings::default(), no_env, None).unwrap(), RunConfig::default());
    }

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("cyclobar.conf");
        std::fs::write(&file, "# test\nprime = 5\nbudget=10\nformat = csv\nr_max = 4\n").unwrap();
        let env = |k: &str| match k {
            "CYCLOBAR_BUDGET" => Some("20".to_string()),
            "CYCLOBAR_PRIME" => Some("3".to_string()),
            _ => None,
        };
        let flags = Settings {
            prime: Some(7),
            ..Settings::default()
        };
        let cfg = RunConfig::resolve(flags, env, Some(&file)).unwrap();
        assert_eq!(cfg.prime, 7);
        assert_eq!(cfg.budget, 20);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.r_max, 4);
        assert_eq!(cfg.max_weight, 3);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Settings::from_config_text("colour = red", "f").is_err());
        assert!(Settings::from_config_text("prime", "f").is_err());
        let env = |k: &str| (k == "CYCLOBAR_PRIME").then(|| "4".to_string());
        assert!(matches!(RunConfig::resolve(Settings::default(), env, None), Err(CliError::Usage(_))));
        let env = |k: &str| (k == "CYCLOBAR_BUDGET").then(|| "0".to_string());
        assert!(RunConfig::resolve(Settings::default(), env, None).is_err());
    }
}
