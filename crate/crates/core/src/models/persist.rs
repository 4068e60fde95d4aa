//! Model files are UTF-8 text:
//!
//! ```text
//! codeneed-model 1
//! [header]
//! {"format_version":1,"algorithm":"RF","seed":42,"schema_fingerprint":"...","n_features":130}
//! [standardizer]
//! {"mean":[...],"std":[...]}
//! [parameters]
//! {"RF":{...}}
//! [end]
//! ```
//!
//! Each section body is a single line of JSON. Floats are written with
//! round-trip precision, so a reloaded model predicts bit-identically.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Algorithm, ModelParams, Standardizer, TrainedModel};
use crate::error::{Error, Result};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "codeneed-model";

#[derive(Serialize, Deserialize)]
struct Header {
    format_version: u32,
    algorithm: Algorithm,
    seed: u64,
    schema_fingerprint: String,
    n_features: usize,
}

pub fn write_model<W: Write>(model: &TrainedModel, mut out: W) -> Result<()> {
    let header = Header {
        format_version: MODEL_FORMAT_VERSION,
        algorithm: model.algorithm,
        seed: model.seed,
        schema_fingerprint: model.schema_fingerprint.clone(),
        n_features: model.n_features(),
    };
    writeln!(out, "{MAGIC} {MODEL_FORMAT_VERSION}")?;
    writeln!(out, "[header]\n{}", serde_json::to_string(&header)?)?;
    writeln!(out, "[standardizer]\n{}", serde_json::to_string(&model.standardizer)?)?;
    writeln!(out, "[parameters]\n{}", serde_json::to_string(&model.params)?)?;
    writeln!(out, "[end]")?;
    out.flush()?;
    Ok(())
}

pub fn save_model(model: &TrainedModel, path: &Path) -> Result<()> {
    write_model(model, BufWriter::new(File::create(path)?))
}

fn format_err(section: &'static str, message: impl Into<String>) -> Error {
    Error::ModelFormat {
        section,
        message: message.into(),
    }
}

struct Sections<I> {
    lines: I,
}

impl<I: Iterator<Item = std::io::Result<String>>> Sections<I> {
    fn line(&mut self, section: &'static str) -> Result<String> {
        match self.lines.next() {
            Some(l) => Ok(l?),
            None => Err(format_err(section, "unexpected end of file")),
        }
    }

    fn body(&mut self, section: &'static str) -> Result<String> {
        let tag = self.line(section)?;
        if tag != format!("[{section}]") {
            return Err(format_err(section, format!("expected `[{section}]`, found `{tag}`")));
        }
        self.line(section)
    }

    fn parse<T: for<'de> Deserialize<'de>>(&mut self, section: &'static str) -> Result<T> {
        let body = self.body(section)?;
        serde_json::from_str(&body).map_err(|e| format_err(section, e.to_string()))
    }
}

pub fn read_model<R: BufRead>(input: R) -> Result<TrainedModel> {
    let mut s = Sections { lines: input.lines() };
    let first = s.line("preamble")?;
    let version = first
        .strip_prefix(MAGIC)
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| format_err("preamble", format!("not a model file: `{first}`")))?;
    if version != MODEL_FORMAT_VERSION {
        return Err(Error::Version {
            expected: MODEL_FORMAT_VERSION,
            found: version,
        });
    }
    let header: Header = s.parse("header")?;
    if header.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::Version {
            expected: MODEL_FORMAT_VERSION,
            found: header.format_version,
        });
    }
    let standardizer: Standardizer = s.parse("standardizer")?;
    if standardizer.mean.len() != header.n_features || standardizer.std.len() != header.n_features {
        return Err(format_err("standardizer", "width disagrees with header"));
    }
    let params: ModelParams = s.parse("parameters")?;
    if params.algorithm() != header.algorithm {
        return Err(format_err(
            "parameters",
            format!("holds {} state but header says {}", params.algorithm(), header.algorithm),
        ));
    }
    let end = s.line("end")?;
    if end != "[end]" {
        return Err(format_err("end", format!("expected `[end]`, found `{end}`")));
    }
    Ok(TrainedModel {
        algorithm: header.algorithm,
        seed: header.seed,
        schema_fingerprint: header.schema_fingerprint,
        standardizer,
        params,
    })
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    read_model(BufReader::new(File::open(path)?))
}
