//! Tooling for studying Q&A questions that need code snippets.
//!
//! The crate covers the whole path from raw question records to trained
//! classifiers and statistical reports:
//!
//! * [`corpus`] reads line-delimited question records, labels each one as
//!   MICO / COAC / CODS / DONC and builds chronological train/test splits.
//! * [`textprep`] strips HTML, splits sentences, tokenizes, stems and tags.
//! * [`features`] learns keyword and part-of-speech pattern vocabularies by
//!   frequency difference and ratio, and turns questions into count vectors.
//! * [`models`] holds six classifiers behind a single train/predict surface.
//! * [`analysis`] has classification metrics, the nonparametric test toolbox
//!   and the answer-effect report.
//! * [`cli`] wires everything into the `codeneed` executable.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod features;
pub mod models;
pub mod synth;
pub mod textprep;

pub use error::{Error, Result};
