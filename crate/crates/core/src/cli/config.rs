use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::DayWindow;
use crate::error::{Error, Result};
use crate::features::Thresholds;
use crate::models::{Algorithm, Hyperparams};

/// One algorithm or every algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgorithmChoice {
    #[default]
    All,
    One(Algorithm),
}

impl AlgorithmChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::All => Algorithm::ALL.to_vec(),
            AlgorithmChoice::One(a) => vec![a],
        }
    }
}

impl FromStr for AlgorithmChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            Ok(AlgorithmChoice::All)
        } else {
            s.parse().map(AlgorithmChoice::One)
        }
    }
}

impl fmt::Display for AlgorithmChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmChoice::All => f.write_str("all"),
            AlgorithmChoice::One(a) => a.fmt(f),
        }
    }
}

impl Serialize for AlgorithmChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgorithmChoice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    pub input: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

/// Settings shared by all subcommands, read from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub train_fraction: f64,
    pub thresholds: Thresholds,
    pub algorithm: AlgorithmChoice,
    pub hyperparams: Hyperparams,
    pub paths: Paths,
    pub day_window: DayWindow,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            train_fraction: 0.7,
            thresholds: Thresholds::default(),
            algorithm: AlgorithmChoice::All,
            hyperparams: Hyperparams::default(),
            paths: Paths::default(),
            day_window: DayWindow::default(),
        }
    }
}

impl RunConfig {
    /// Parses a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.paths.input, &mut cfg.paths.out_dir].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::InvalidInput(format!(
                "train_fraction must lie in (0, 1), got {}",
                self.train_fraction
            )));
        }
        let t = &self.thresholds;
        if t.keyword_d_min == 0 || t.body_d_min == 0 || t.title_d_min == 0 || t.r_max.is_nan() || t.r_max <= 0.0 {
            return Err(Error::InvalidInput("thresholds must be positive".into()));
        }
        let w = self.day_window;
        if w.start_hour >= w.end_hour || w.end_hour > 24 {
            return Err(Error::InvalidInput(format!(
                "day_window needs start_hour < end_hour <= 24, got {}..{}",
                w.start_hour, w.end_hour
            )));
        }
        if self.hyperparams.knn.k == 0 {
            return Err(Error::InvalidInput("knn.k must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_file() {
        let cfg: RunConfig = toml::from_str(
            r#"
seed = 7
algorithm = "knn"
[thresholds]
title_d_min = 3
[hyperparams.knn]
k = 1
[day_window]
start_hour = 9
"#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.algorithm, AlgorithmChoice::One(Algorithm::Knn));
        assert_eq!(cfg.thresholds.title_d_min, 3);
        assert_eq!(cfg.thresholds.keyword_d_min, 50);
        assert_eq!(cfg.hyperparams.knn.k, 1);
        assert_eq!(cfg.hyperparams.rf.n_trees, 100);
        assert_eq!(cfg.day_window, DayWindow { start_hour: 9, end_hour: 20 });
        assert_eq!(cfg.train_fraction, 0.7);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |s: &str| toml::from_str::<RunConfig>(s).map_err(|_| ()).and_then(|c| c.validate().map_err(|_| ()));
        assert!(bad("train_fraction = 1.0").is_err());
        assert!(bad("algorithm = \"svm\"").is_err());
        assert!(bad("[thresholds]\nkeyword_d_min = 0").is_err());
        assert!(bad("[day_window]\nstart_hour = 20").is_err());
        assert!(bad("sed = 1").is_err());
    }
}
