//! The `codeneed` command line: label, split, train, predict, evaluate and
//! effects subcommands over line-delimited question files.
//!
//! Exit codes: 0 on success, 1 when `--strict` is set and the run produced
//! warnings (empty inputs, partial reports), 2 on input or contract errors.

mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{AlgorithmChoice, Paths, RunConfig};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "codeneed", version, about = "Predict whether Q&A questions need a code snippet")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML run configuration
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Algorithm name (RF, GBSTUMP, MLP, GNB, KNN, LSVM) or `all`
    #[arg(long, global = true, value_name = "NAME|all")]
    pub algorithm: Option<String>,
    #[arg(long, global = true, value_name = "F")]
    pub train_fraction: Option<f64>,
    /// Treat warnings as failures (exit code 1)
    #[arg(long, global = true)]
    pub strict: bool,
    /// Leave the generation time out of reports
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Directory receiving every output file
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assign MICO/COAC/CODS/DONC labels; writes labeled.jsonl
    Label {
        /// Question records, one JSON object per line
        input: Option<PathBuf>,
    },
    /// Chronological train/test split of a labeled file; writes split.json
    Split { input: Option<PathBuf> },
    /// Split, learn the feature schema and train models
    Train { input: Option<PathBuf> },
    /// Predict needs-code for each question; writes predictions-<alg>.csv
    Predict {
        input: Option<PathBuf>,
        /// Model files (default: model-<alg>.model in the output directory)
        #[arg(long, value_name = "PATH")]
        model: Vec<PathBuf>,
        /// Schema file (default: schema.json in the output directory)
        #[arg(long, value_name = "PATH")]
        schema: Option<PathBuf>,
        /// Split manifest used with `--partition`
        #[arg(long, value_name = "PATH")]
        split: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Partition::All)]
        partition: Partition,
    },
    /// Score predictions against labels; writes metrics.json and metrics.txt
    Evaluate {
        /// Prediction files (default: predictions-<alg>.csv in the output directory)
        #[arg(long, value_name = "PATH")]
        predictions: Vec<PathBuf>,
        /// Labeled questions
        #[arg(long, value_name = "PATH")]
        truth: Option<PathBuf>,
    },
    /// Answer-outcome analysis; writes effects.json and effects.txt
    Effects { input: Option<PathBuf> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Partition {
    All,
    Train,
    Test,
}

/// Settings after merging flags over the config file over defaults.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: RunConfig,
    pub out_dir: PathBuf,
    pub strict: bool,
    pub timestamp: bool,
}

impl Resolved {
    pub fn from_args(g: &GlobalArgs) -> Result<Self> {
        let mut config = match &g.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = g.seed {
            config.seed = seed;
        }
        if let Some(a) = &g.algorithm {
            config.algorithm = a.parse()?;
        }
        if let Some(f) = g.train_fraction {
            config.train_fraction = f;
        }
        if let Some(dir) = &g.out_dir {
            config.paths.out_dir = Some(dir.clone());
        }
        config.validate()?;
        let out_dir = config.paths.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
        Ok(Self {
            config,
            out_dir,
            strict: g.strict,
            timestamp: !g.no_timestamp,
        })
    }

    fn input(&self, given: &Option<PathBuf>) -> Result<PathBuf> {
        given
            .clone()
            .or_else(|| self.config.paths.input.clone())
            .ok_or_else(|| Error::InvalidInput("no input file given (argument or paths.input)".into()))
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    match execute(&cli) {
        Ok(warnings) => {
            for w in &warnings {
                log::warn!("{w}");
            }
            if cli.global.strict && !warnings.is_empty() {
                1
            } else {
                0
            }
        }
        Err(e) => {
            log::error!("{e}");
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs the parsed command, returning its warnings.
pub fn execute(cli: &Cli) -> Result<Vec<String>> {
    let r = Resolved::from_args(&cli.global)?;
    std::fs::create_dir_all(&r.out_dir)?;
    match &cli.command {
        Command::Label { input } => commands::label(&r, &r.input(input)?),
        Command::Split { input } => commands::split(&r, &r.input(input)?),
        Command::Train { input } => commands::train(&r, &r.input(input)?),
        Command::Predict {
            input,
            model,
            schema,
            split,
            partition,
        } => commands::predict(
            &r,
            &r.input(input)?,
            model,
            schema.as_deref(),
            split.as_deref(),
            *partition,
        ),
        Command::Evaluate { predictions, truth } => {
            let truth = r.input(truth)?;
            commands::evaluate(&r, predictions, &truth)
        }
        Command::Effects { input } => commands::effects(&r, &r.input(input)?),
    }
}
