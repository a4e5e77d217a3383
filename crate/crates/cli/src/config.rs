use std::path::{Path, PathBuf};

use mdm_core::dyadic::parse_decimal;
use mdm_core::freq::{ConditionParams, Mode, SchedulerConfig};
use mdm_core::norms::GridSpec;
use mdm_core::pipeline::PipelineConfig;
use mdm_core::{Error, Result};
use num_bigint::BigUint;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "MDM_CONFIG";

/// Persistent defaults, read from a TOML file; command-line flags win.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default)]
pub struct Config {
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
    pub kappa_bits: u32,
    pub scalar_kappa_bits: u32,
    pub lambda: f64,
    /// Decimal or `b^e`; unset means `3^max(2, ⌈λn⌉)`.
    pub initial_base: Option<String>,
    pub max_base: String,
    pub enum_limit: usize,
    pub out_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            grid: 512,
            samples: 100,
            seed: 0,
            kappa_bits: 20,
            scalar_kappa_bits: 52,
            lambda: 2.0,
            initial_base: None,
            max_base: "2^4096".into(),
            enum_limit: 20,
            out_dir: "out".into(),
        }
    }
}

/// Parses a decimal integer or a power `b^e`.
pub fn parse_big(s: &str) -> Result<BigUint> {
    let bad = || Error::InvalidInput(format!("expected a decimal integer or b^e, got {s:?}"));
    match s.split_once('^') {
        Some((b, e)) => {
            let b = parse_decimal(b).ok_or_else(bad)?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            if e > 1 << 20 {
                return Err(bad());
            }
            Ok(b.pow(e))
        }
        None => parse_decimal(s).ok_or_else(bad),
    }
}

impl Config {
    /// Reads `path`, or the file named by `MDM_CONFIG`, or the defaults.
    /// Unknown keys are returned as warnings.
    pub fn load(path: Option<&Path>) -> Result<(Config, Vec<String>)> {
        let env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        let Some(path) = path.map(Path::to_path_buf).or(env) else {
            return Ok((Config::default(), Vec::new()));
        };
        let text = std::fs::read_to_string(&path).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        })?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<(Config, Vec<String>)> {
        let value: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        const KNOWN: [&str; 10] = [
            "grid",
            "samples",
            "seed",
            "kappa_bits",
            "scalar_kappa_bits",
            "lambda",
            "initial_base",
            "max_base",
            "enum_limit",
            "out_dir",
        ];
        let warnings = value
            .keys()
            .filter(|k| !KNOWN.contains(&k.as_str()))
            .map(|k| format!("config: unknown key `{k}`"))
            .collect();
        let cfg: Config = value
            .try_into()
            .map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok((cfg, warnings))
    }

    pub fn validate(&self) -> Result<()> {
        GridSpec::new(self.grid, self.samples, self.seed)?;
        if self.kappa_bits == 0
            || self.kappa_bits > 64
            || self.scalar_kappa_bits == 0
            || self.scalar_kappa_bits > 64
        {
            return Err(Error::InvalidInput("kappa bits must lie in 1..=64".into()));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::InvalidInput("lambda must be positive".into()));
        }
        if self.enum_limit == 0 || self.enum_limit > 30 {
            return Err(Error::InvalidInput("enum limit must lie in 1..=30".into()));
        }
        if let Some(b) = &self.initial_base {
            parse_big(b)?;
        }
        parse_big(&self.max_base)?;
        Ok(())
    }

    pub fn pipeline(&self) -> Result<PipelineConfig> {
        self.validate()?;
        Ok(PipelineConfig {
            kappa_bits: self.kappa_bits,
            scalar_kappa_bits: self.scalar_kappa_bits,
            scheduler: SchedulerConfig {
                lambda: self.lambda,
                initial_base: self.initial_base.as_deref().map(parse_big).transpose()?,
                max_base: parse_big(&self.max_base)?,
                mode: Mode::Standard,
                conditions: ConditionParams {
                    enum_limit: self.enum_limit,
                    ..Default::default()
                },
            },
            grid: GridSpec::new(self.grid, self.samples, self.seed)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_decimals() {
        assert_eq!(parse_big("81").unwrap(), BigUint::from(81u32));
        assert_eq!(parse_big("3^4").unwrap(), BigUint::from(81u32));
        assert!(parse_big("3^").is_err());
        assert!(parse_big("-3").is_err());
    }

    #[test]
    fn file_overrides_and_warnings() {
        let (c, w) = Config::parse("grid = 64\nseed = 5\ncolour = \"red\"\n").unwrap();
        assert_eq!((c.grid, c.seed, c.kappa_bits), (64, 5, 20));
        assert_eq!(w, vec!["config: unknown key `colour`"]);
        assert!(Config::parse("grid = 48").is_err());
        assert!(Config::parse("grid = ").is_err());
    }
}
