use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Partition, Resolved};
use crate::analysis::{classification_metrics, effect_report, render_metrics_table, MetricsReport};
use crate::corpus::{
    chronological_split, label_all, parse_question_stream, read_lines, write_lines, Category, LabeledQuestion,
    QuestionRecord, SplitManifest,
};
use crate::error::{Error, Result};
use crate::features::{featurize_all, learn_schema, write_matrix_csv, FeatureSchema};
use crate::models::{self, load_model, save_model, Algorithm, TrainedModel};
use crate::textprep::LexiconTagger;

pub const LABELED_FILE: &str = "labeled.jsonl";
pub const SPLIT_FILE: &str = "split.json";
pub const SCHEMA_FILE: &str = "schema.json";
pub const SELECTION_FILE: &str = "selection.json";
pub const TRAIN_FEATURES_FILE: &str = "features-train.csv";
pub const METRICS_JSON: &str = "metrics.json";
pub const METRICS_TEXT: &str = "metrics.txt";
pub const EFFECTS_JSON: &str = "effects.json";
pub const EFFECTS_TEXT: &str = "effects.txt";

pub fn model_file(a: Algorithm) -> String {
    format!("model-{}.model", a.as_str().to_lowercase())
}

pub fn predictions_file(a: Algorithm) -> String {
    format!("predictions-{}.csv", a.as_str().to_lowercase())
}

/// Report body with an optional generation time in front.
#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_unix: Option<u64>,
    #[serde(flatten)]
    body: &'a T,
}

fn write_json<T: Serialize>(r: &Resolved, name: &str, body: &T) -> Result<PathBuf> {
    let generated_unix = r
        .timestamp
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    let path = r.out_dir.join(name);
    let mut out = BufWriter::new(File::create(&path)?);
    serde_json::to_writer_pretty(&mut out, &Stamped { generated_unix, body })?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(path)
}

fn write_text(r: &Resolved, name: &str, text: &str) -> Result<PathBuf> {
    let path = r.out_dir.join(name);
    std::fs::write(&path, text)?;
    Ok(path)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn read_labeled(path: &Path) -> Result<Vec<LabeledQuestion>> {
    read_lines(open(path)?)
}

pub fn label(r: &Resolved, input: &Path) -> Result<Vec<String>> {
    let records = parse_question_stream(open(input)?)?;
    let labeled = label_all(records);
    let out = r.out_dir.join(LABELED_FILE);
    write_lines(BufWriter::new(File::create(&out)?), &labeled)?;
    let mut counts: BTreeMap<Category, usize> = Category::ALL.iter().map(|&c| (c, 0)).collect();
    for q in &labeled {
        *counts.entry(q.label.category).or_default() += 1;
    }
    for (c, n) in &counts {
        println!("{c}\t{n}");
    }
    let low = labeled.iter().filter(|q| q.label.low_confidence).count();
    if low > 0 {
        log::info!("{low} COAC label(s) have no revision history (low confidence)");
    }
    log::info!("wrote {}", out.display());
    let mut warnings = Vec::new();
    if labeled.is_empty() {
        warnings.push(format!("{}: no questions", input.display()));
    }
    Ok(warnings)
}

pub fn split(r: &Resolved, input: &Path) -> Result<Vec<String>> {
    let labeled = read_labeled(input)?;
    let split = chronological_split(&labeled, r.config.train_fraction)?;
    let manifest = split.manifest(r.config.train_fraction);
    print_split(&manifest);
    write_json(r, SPLIT_FILE, &manifest)?;
    Ok(Vec::new())
}

fn print_split(m: &SplitManifest) {
    println!(
        "train\t{} needs-code\t{} no-code",
        m.train_needs_code.len(),
        m.train_no_code.len()
    );
    println!(
        "test\t{} needs-code\t{} no-code",
        m.test_needs_code.len(),
        m.test_no_code.len()
    );
}

pub fn train_models(r: &Resolved, input: &Path) -> Result<(FeatureSchema, Vec<TrainedModel>, Vec<String>)> {
    let cfg = &r.config;
    let labeled = read_labeled(input)?;
    let split = chronological_split(&labeled, cfg.train_fraction)?;
    let manifest = split.manifest(cfg.train_fraction);
    print_split(&manifest);
    write_json(r, SPLIT_FILE, &manifest)?;

    let tagger = LexiconTagger::bundled();
    let (schema, selection) = learn_schema(&split.train, cfg.thresholds, &tagger)?;
    schema.write(BufWriter::new(File::create(r.out_dir.join(SCHEMA_FILE))?))?;
    let mut sel = BufWriter::new(File::create(r.out_dir.join(SELECTION_FILE))?);
    serde_json::to_writer_pretty(&mut sel, &selection)?;
    sel.write_all(b"\n")?;
    sel.flush()?;
    println!(
        "schema\t{} features\t{} keywords\t{} title patterns\t{} body patterns",
        schema.len(),
        schema.keywords.len(),
        schema.title_patterns.len(),
        schema.body_patterns.len()
    );
    let mut warnings = Vec::new();
    if schema.len() == 2 {
        warnings.push("no keyword or pattern passed the thresholds; only the two count features remain".into());
    }

    let vectors = featurize_all(split.train.par_iter().map(|q| &q.record), &schema, &tagger)?;
    let ids: Vec<u64> = split.train.iter().map(|q| q.record.id).collect();
    write_matrix_csv(
        BufWriter::new(File::create(r.out_dir.join(TRAIN_FEATURES_FILE))?),
        &schema,
        &ids,
        &vectors,
    )?;
    let x: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_row()).collect();
    let y: Vec<bool> = split.train.iter().map(|q| q.label.needs_code).collect();

    let mut models = Vec::new();
    for algorithm in cfg.algorithm.algorithms() {
        log::info!("training {algorithm} on {} questions", x.len());
        let model = models::train(algorithm, &x, &y, cfg.seed, &cfg.hyperparams, &schema.fingerprint)?;
        let path = r.out_dir.join(model_file(algorithm));
        save_model(&model, &path)?;
        println!("model\t{algorithm}\t{}", path.display());
        models.push(model);
    }
    Ok((schema, models, warnings))
}

pub fn train(r: &Resolved, input: &Path) -> Result<Vec<String>> {
    train_models(r, input).map(|(_, _, w)| w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct PredictionRow {
    id: u64,
    label: String,
    score: Option<f64>,
}

const NEEDS_CODE: &str = "needs-code";
const NO_CODE: &str = "no-code";

fn partition_ids(path: &Path, partition: Partition) -> Result<HashSet<u64>> {
    let m: SplitManifest = serde_json::from_reader(open(path)?)?;
    Ok(match partition {
        Partition::All => [m.train_needs_code, m.train_no_code, m.test_needs_code, m.test_no_code].concat(),
        Partition::Train => [m.train_needs_code, m.train_no_code].concat(),
        Partition::Test => [m.test_needs_code, m.test_no_code].concat(),
    }
    .into_iter()
    .collect())
}

pub fn predict(
    r: &Resolved,
    input: &Path,
    model_paths: &[PathBuf],
    schema_path: Option<&Path>,
    split_path: Option<&Path>,
    partition: Partition,
) -> Result<Vec<String>> {
    let schema_path = schema_path.map_or_else(|| r.out_dir.join(SCHEMA_FILE), Path::to_path_buf);
    let schema = FeatureSchema::read(open(&schema_path)?)?;
    let model_paths: Vec<PathBuf> = if model_paths.is_empty() {
        r.config
            .algorithm
            .algorithms()
            .into_iter()
            .map(|a| r.out_dir.join(model_file(a)))
            .collect()
    } else {
        model_paths.to_vec()
    };
    let models = model_paths
        .iter()
        .map(|p| {
            let m = load_model(p)?;
            if m.schema_fingerprint != schema.fingerprint {
                return Err(Error::FingerprintMismatch {
                    expected: m.schema_fingerprint.clone(),
                    found: schema.fingerprint.clone(),
                });
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut questions: Vec<QuestionRecord> = parse_question_stream(open(input)?)?;
    let split_path = match (split_path, partition) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Partition::All) => None,
        (None, _) => Some(r.out_dir.join(SPLIT_FILE)),
    };
    if let Some(p) = split_path {
        let keep = partition_ids(&p, partition)?;
        questions.retain(|q| keep.contains(&q.id));
    }
    let tagger = LexiconTagger::bundled();
    let vectors = featurize_all(questions.par_iter(), &schema, &tagger)?;
    let x: Vec<Vec<f64>> = vectors.iter().map(|v| v.to_row()).collect();

    let mut warnings = Vec::new();
    if questions.is_empty() {
        warnings.push(format!("{}: no questions to predict", input.display()));
    }
    for model in &models {
        let preds = model.predict_checked(&schema.fingerprint, &x)?;
        let path = r.out_dir.join(predictions_file(model.algorithm));
        let mut w = csv::Writer::from_writer(BufWriter::new(File::create(&path)?));
        if questions.is_empty() {
            w.write_record(["id", "label", "score"])?;
        }
        for (q, p) in questions.iter().zip(&preds) {
            w.serialize(PredictionRow {
                id: q.id,
                label: if p.label { NEEDS_CODE } else { NO_CODE }.into(),
                score: p.score,
            })?;
        }
        w.flush()?;
        println!("predictions\t{}\t{}\t{}", model.algorithm, preds.len(), path.display());
    }
    Ok(warnings)
}

/// Model name from `predictions-<alg>.csv`, otherwise the file stem.
fn model_name(path: &Path) -> String {
    let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    match stem.strip_prefix("predictions-") {
        Some(alg) => alg.to_uppercase(),
        None => stem,
    }
}

#[derive(Debug, Serialize)]
pub struct ModelMetrics {
    pub model: String,
    pub n: usize,
    #[serde(flatten)]
    pub report: MetricsReport,
}

#[derive(Debug, Serialize)]
pub struct MetricsFile {
    pub models: Vec<ModelMetrics>,
}

pub fn evaluate(r: &Resolved, prediction_paths: &[PathBuf], truth: &Path) -> Result<Vec<String>> {
    let truth: HashMap<u64, bool> = read_labeled(truth)?
        .into_iter()
        .map(|q| (q.record.id, q.label.needs_code))
        .collect();
    let paths: Vec<PathBuf> = if prediction_paths.is_empty() {
        r.config
            .algorithm
            .algorithms()
            .into_iter()
            .map(|a| r.out_dir.join(predictions_file(a)))
            .collect()
    } else {
        prediction_paths.to_vec()
    };
    let mut models = Vec::new();
    for path in &paths {
        let mut reader = csv::Reader::from_reader(open(path)?);
        let mut seen = HashSet::new();
        let (mut y_true, mut y_pred) = (Vec::new(), Vec::new());
        for row in reader.deserialize() {
            let row: PredictionRow = row?;
            let Some(&t) = truth.get(&row.id) else {
                return Err(Error::InvalidInput(format!(
                    "{}: question {} has no label in the truth file",
                    path.display(),
                    row.id
                )));
            };
            if !seen.insert(row.id) {
                return Err(Error::InvalidInput(format!(
                    "{}: question {} predicted twice",
                    path.display(),
                    row.id
                )));
            }
            let p = match row.label.as_str() {
                NEEDS_CODE => true,
                NO_CODE => false,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "{}: unknown label `{other}` for question {}",
                        path.display(),
                        row.id
                    )))
                }
            };
            y_true.push(t);
            y_pred.push(p);
        }
        let report = classification_metrics(&y_true, &y_pred)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        models.push(ModelMetrics {
            model: model_name(path),
            n: y_true.len(),
            report,
        });
    }
    let table: Vec<(String, MetricsReport)> = models.iter().map(|m| (m.model.clone(), m.report)).collect();
    let text = render_metrics_table(&table);
    print!("{text}");
    write_text(r, METRICS_TEXT, &text)?;
    write_json(r, METRICS_JSON, &MetricsFile { models })?;
    Ok(Vec::new())
}

pub fn effects(r: &Resolved, input: &Path) -> Result<Vec<String>> {
    let labeled = read_labeled(input)?;
    let report = effect_report(&labeled, r.config.day_window);
    let text = report.render_text();
    print!("{text}");
    write_text(r, EFFECTS_TEXT, &text)?;
    write_json(r, EFFECTS_JSON, &report)?;
    let mut warnings: Vec<String> = report.gaps.iter().map(|g| format!("partial report: {g}")).collect();
    if labeled.is_empty() {
        warnings.push(format!("{}: no questions", input.display()));
    }
    Ok(warnings)
}
