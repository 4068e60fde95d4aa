//! Label, split, learn features, train every model and evaluate on the
//! held-out questions of the fixture corpus, all in process.
//!
//!     cargo run --example end_to_end

use std::fs::File;
use std::io::BufReader;

use codeneed::analysis::{classification_metrics, render_metrics_table};
use codeneed::corpus::{chronological_split, label_all, parse_question_stream};
use codeneed::features::{featurize_all, learn_schema, Thresholds};
use codeneed::models::{train, Algorithm, Hyperparams};
use codeneed::textprep::LexiconTagger;
use rayon::prelude::*;

fn main() -> codeneed::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus.jsonl");
    let labeled = label_all(parse_question_stream(BufReader::new(File::open(path)?))?);
    let split = chronological_split(&labeled, 0.7)?;
    let tagger = LexiconTagger::bundled();
    let thresholds = Thresholds {
        keyword_d_min: 30,
        body_d_min: 30,
        title_d_min: 15,
        r_max: 50.0,
    };
    let (schema, _) = learn_schema(&split.train, thresholds, &tagger)?;

    let rows = |part: &[codeneed::corpus::LabeledQuestion]| -> codeneed::error::Result<(Vec<Vec<f64>>, Vec<bool>)> {
        let v = featurize_all(part.par_iter().map(|q| &q.record), &schema, &tagger)?;
        Ok((v.iter().map(|f| f.to_row()).collect(), part.iter().map(|q| q.label.needs_code).collect()))
    };
    let (x_train, y_train) = rows(&split.train)?;
    let (x_test, y_test) = rows(&split.test)?;

    let mut table = Vec::new();
    for algorithm in Algorithm::ALL {
        let model = train(algorithm, &x_train, &y_train, 42, &Hyperparams::default(), &schema.fingerprint)?;
        let pred: Vec<bool> = model
            .predict_checked(&schema.fingerprint, &x_test)?
            .iter()
            .map(|p| p.label)
            .collect();
        table.push((algorithm.to_string(), classification_metrics(&y_test, &pred)?));
    }
    print!("{}", render_metrics_table(&table));
    Ok(())
}
