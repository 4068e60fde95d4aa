//! Six binary classifiers behind one train/predict interface.

pub mod gbstump;
pub mod gnb;
pub mod knn;
pub mod lsvm;
pub mod mlp;
pub mod persist;
pub mod standardize;
pub mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use gbstump::{GradientBoosting, Stump};
pub use gnb::GaussianNb;
pub use knn::Knn;
pub use lsvm::LinearSvm;
pub use mlp::{Mlp, MlpGradient};
pub use persist::{load_model, read_model, save_model, write_model, MODEL_FORMAT_VERSION};
pub use standardize::Standardizer;
pub use tree::{Node, RandomForest, Tree};

use crate::error::{Error, Result};
use standardize::check_width;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Rf,
    Gbstump,
    Mlp,
    Gnb,
    Knn,
    Lsvm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Rf,
        Algorithm::Gbstump,
        Algorithm::Mlp,
        Algorithm::Gnb,
        Algorithm::Knn,
        Algorithm::Lsvm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Rf => "RF",
            Algorithm::Gbstump => "GBSTUMP",
            Algorithm::Mlp => "MLP",
            Algorithm::Gnb => "GNB",
            Algorithm::Knn => "KNN",
            Algorithm::Lsvm => "LSVM",
        }
    }

    /// Whether rows are z-scored before reaching the learner.
    pub fn standardizes(self) -> bool {
        matches!(self, Algorithm::Knn | Algorithm::Lsvm | Algorithm::Mlp)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RfParams {
    pub n_trees: usize,
    /// Split candidates per node; `None` means `floor(sqrt(features))`.
    pub max_features: Option<usize>,
    pub bootstrap: bool,
}

impl Default for RfParams {
    fn default() -> Self {
        Self {
            n_trees: 100,
            max_features: None,
            bootstrap: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GbstumpParams {
    pub rounds: usize,
    pub learning_rate: f64,
}

impl Default for GbstumpParams {
    fn default() -> Self {
        Self {
            rounds: 200,
            learning_rate: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MlpParams {
    pub hidden: usize,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for MlpParams {
    fn default() -> Self {
        Self {
            hidden: 64,
            learning_rate: 0.01,
            epochs: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GnbParams {
    pub var_smoothing: f64,
}

impl Default for GnbParams {
    fn default() -> Self {
        Self { var_smoothing: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KnnParams {
    pub k: usize,
}

impl Default for KnnParams {
    fn default() -> Self {
        Self { k: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LsvmParams {
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for LsvmParams {
    fn default() -> Self {
        Self {
            lambda: 1e-4,
            epochs: 100,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparams {
    pub rf: RfParams,
    pub gbstump: GbstumpParams,
    pub mlp: MlpParams,
    pub gnb: GnbParams,
    pub knn: KnnParams,
    pub lsvm: LsvmParams,
}

/// Learned state of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ModelParams {
    Rf(RandomForest),
    Gbstump(GradientBoosting),
    Mlp(Mlp),
    Gnb(GaussianNb),
    Knn(Knn),
    Lsvm(LinearSvm),
}

impl ModelParams {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            ModelParams::Rf(_) => Algorithm::Rf,
            ModelParams::Gbstump(_) => Algorithm::Gbstump,
            ModelParams::Mlp(_) => Algorithm::Mlp,
            ModelParams::Gnb(_) => Algorithm::Gnb,
            ModelParams::Knn(_) => Algorithm::Knn,
            ModelParams::Lsvm(_) => Algorithm::Lsvm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: bool,
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub schema_fingerprint: String,
    pub standardizer: Standardizer,
    pub params: ModelParams,
}

fn check_labels(x: &[Vec<f64>], y: &[bool]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "{} rows but {} labels",
            x.len(),
            y.len()
        )));
    }
    let pos = y.iter().filter(|&&l| l).count();
    if pos == 0 {
        return Err(Error::ClassTooSmall {
            class: "needs-code",
            count: 0,
            required: 1,
        });
    }
    if pos == y.len() {
        return Err(Error::ClassTooSmall {
            class: "no-code",
            count: 0,
            required: 1,
        });
    }
    Ok(())
}

/// Trains one model. Deterministic in all arguments.
pub fn train(
    algorithm: Algorithm,
    x: &[Vec<f64>],
    y: &[bool],
    seed: u64,
    hp: &Hyperparams,
    schema_fingerprint: &str,
) -> Result<TrainedModel> {
    check_labels(x, y)?;
    let standardizer = Standardizer::fit(x)?;
    let z;
    let input = if algorithm.standardizes() {
        z = standardizer.apply(x)?;
        &z[..]
    } else {
        x
    };
    let params = match algorithm {
        Algorithm::Rf => ModelParams::Rf(RandomForest::fit(
            input,
            y,
            hp.rf.n_trees.max(1),
            hp.rf.max_features,
            hp.rf.bootstrap,
            seed,
        )),
        Algorithm::Gbstump => ModelParams::Gbstump(GradientBoosting::fit(
            input,
            y,
            hp.gbstump.rounds,
            hp.gbstump.learning_rate,
        )),
        Algorithm::Mlp => ModelParams::Mlp(Mlp::fit(
            input,
            y,
            hp.mlp.hidden,
            hp.mlp.learning_rate,
            hp.mlp.epochs,
            seed,
        )),
        Algorithm::Gnb => ModelParams::Gnb(GaussianNb::fit(input, y, hp.gnb.var_smoothing)),
        Algorithm::Knn => ModelParams::Knn(Knn::fit(input, y, hp.knn.k)),
        Algorithm::Lsvm => ModelParams::Lsvm(LinearSvm::fit(input, y, hp.lsvm.lambda, hp.lsvm.epochs, seed)),
    };
    Ok(TrainedModel {
        algorithm,
        seed,
        schema_fingerprint: schema_fingerprint.to_string(),
        standardizer,
        params,
    })
}

fn scored(score: f64) -> Prediction {
    Prediction {
        label: score >= 0.5,
        score: Some(score),
    }
}

impl TrainedModel {
    pub fn n_features(&self) -> usize {
        self.standardizer.dim()
    }

    pub fn predict_row(&self, row: &[f64]) -> Prediction {
        let z;
        let input = if self.algorithm.standardizes() {
            z = self.standardizer.apply_row(row);
            &z[..]
        } else {
            row
        };
        match &self.params {
            ModelParams::Rf(m) => scored(m.score(input)),
            ModelParams::Gbstump(m) => scored(m.score(input)),
            ModelParams::Mlp(m) => scored(m.score(input)),
            ModelParams::Gnb(m) => scored(m.score(input)),
            ModelParams::Knn(m) => {
                let (label, frac) = m.vote(input);
                Prediction {
                    label,
                    score: Some(frac),
                }
            }
            ModelParams::Lsvm(m) => scored(gbstump::logistic(m.margin(input))),
        }
    }

    pub fn predict(&self, x: &[Vec<f64>]) -> Result<Vec<Prediction>> {
        check_width(x, self.n_features())?;
        Ok(x.iter().map(|r| self.predict_row(r)).collect())
    }

    /// Like [`TrainedModel::predict`], but first checks that the rows were
    /// produced by the schema the model was trained against.
    pub fn predict_checked(&self, schema_fingerprint: &str, x: &[Vec<f64>]) -> Result<Vec<Prediction>> {
        if schema_fingerprint != self.schema_fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: self.schema_fingerprint.clone(),
                found: schema_fingerprint.to_string(),
            });
        }
        self.predict(x)
    }
}
