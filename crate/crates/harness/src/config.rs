use std::path::{Path, PathBuf};

use serde::Deserialize;

use lightchaos::{Budget, Error, Rat, Result};

/// Flat key-value settings, read from a TOML file. Every key is optional;
/// command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub system: Option<String>,
    pub scheme: Option<String>,
    pub resolution: Option<u32>,
    pub k_max: Option<u32>,
    pub p_max: Option<u32>,
    pub epsilon: Option<Rat>,
    pub delta: Option<Rat>,
    pub seed: Option<u64>,
    pub knots: Option<usize>,
    pub grid_pitch: Option<Rat>,
    pub out_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// `other` wins wherever it is set.
    pub fn overlay(self, other: Config) -> Config {
        Config {
            system: other.system.or(self.system),
            scheme: other.scheme.or(self.scheme),
            resolution: other.resolution.or(self.resolution),
            k_max: other.k_max.or(self.k_max),
            p_max: other.p_max.or(self.p_max),
            epsilon: other.epsilon.or(self.epsilon),
            delta: other.delta.or(self.delta),
            seed: other.seed.or(self.seed),
            knots: other.knots.or(self.knots),
            grid_pitch: other.grid_pitch.or(self.grid_pitch),
            out_dir: other.out_dir.or(self.out_dir),
        }
    }

    pub fn budget(&self, base: &Budget) -> Result<Budget> {
        let mut b = base.clone();
        if let Some(k) = self.k_max {
            b.k_max = k;
        }
        if let Some(p) = self.p_max {
            b.p_max = p;
        }
        if let Some(e) = &self.epsilon {
            b.epsilon = e.clone();
        }
        b.validate()?;
        Ok(b)
    }
}

/// Settings handed to an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub budget: Budget,
    pub seed: u64,
    pub resolution: Option<u32>,
    pub delta: Option<Rat>,
    pub knots: Option<usize>,
    pub grid_pitch: Option<Rat>,
}

pub const DEFAULT_SEED: u64 = 7;

impl RunConfig {
    pub fn new(config: &Config, base: &Budget) -> Result<RunConfig> {
        if config.resolution == Some(0) || config.knots.is_some_and(|k| k < 2) {
            return Err(Error::Config("resolution must be positive and knots at least 2".into()));
        }
        if config.grid_pitch.as_ref().is_some_and(|p| !p.is_positive()) || config.delta.as_ref().is_some_and(|d| !d.is_positive()) {
            return Err(Error::Config("grid_pitch and delta must be positive".into()));
        }
        Ok(RunConfig {
            budget: config.budget(base)?,
            seed: config.seed.unwrap_or(DEFAULT_SEED),
            resolution: config.resolution,
            delta: config.delta.clone(),
            knots: config.knots,
            grid_pitch: config.grid_pitch.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_overlay() {
        let file = Config::parse("system = \"tent\"\nk_max = 8\nepsilon = \"1/64\"\nseed = 3\n").unwrap();
        assert_eq!(file.epsilon, Some(Rat::new(1, 64)));
        let flags = Config { k_max: Some(16), ..Config::default() };
        let c = file.overlay(flags);
        assert_eq!((c.k_max, c.seed, c.system.as_deref()), (Some(16), Some(3), Some("tent")));
        assert_eq!(c.budget(&Budget::default()).unwrap().k_max, 16);
        assert!(Config::parse("colour = 1").is_err());
        assert!(Config { k_max: Some(0), ..Config::default() }.budget(&Budget::default()).is_err());
    }
}
