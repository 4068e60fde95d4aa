use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::extract::{analyze, ngrams, QuestionText};
use super::schema::FeatureSchema;
use crate::corpus::QuestionRecord;
use crate::error::{Error, Result};
use crate::textprep::{data_fingerprint, PosTagger};

/// Raw counts for one question, laid out by a [`FeatureSchema`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub keyword_counts: Vec<u64>,
    pub title_pattern_counts: Vec<u64>,
    pub body_pattern_counts: Vec<u64>,
    pub complex_sentence_count: u64,
    pub code_element_count: u64,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.keyword_counts.len() + self.title_pattern_counts.len() + self.body_pattern_counts.len() + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_row(&self) -> Vec<f64> {
        let mut row = Vec::with_capacity(self.len());
        for part in [&self.keyword_counts, &self.title_pattern_counts, &self.body_pattern_counts] {
            row.extend(part.iter().map(|&c| c as f64));
        }
        row.push(self.complex_sentence_count as f64);
        row.push(self.code_element_count as f64);
        row
    }
}

fn tally(items: impl Iterator<Item = String>, vocab: &[String]) -> Vec<u64> {
    let index: HashMap<&str, usize> = vocab.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut counts = vec![0u64; vocab.len()];
    for item in items {
        if let Some(&i) = index.get(item.as_str()) {
            counts[i] += 1;
        }
    }
    counts
}

/// Counts an already analyzed question against the schema.
pub fn vectorize(text: &QuestionText, schema: &FeatureSchema) -> FeatureVector {
    FeatureVector {
        keyword_counts: tally(text.keyword_stems.iter().cloned(), &schema.keywords),
        title_pattern_counts: tally(ngrams(&text.title_symbols), &schema.title_patterns),
        body_pattern_counts: tally(
            text.body_symbols.iter().flat_map(|s| ngrams(s)),
            &schema.body_patterns,
        ),
        complex_sentence_count: text.complex_sentences as u64,
        code_element_count: text.code_elements as u64,
    }
}

fn check_schema(schema: &FeatureSchema) -> Result<()> {
    if schema.data_fingerprint != data_fingerprint() {
        return Err(Error::FingerprintMismatch {
            expected: data_fingerprint().to_string(),
            found: schema.data_fingerprint.clone(),
        });
    }
    Ok(())
}

pub fn featurize(q: &QuestionRecord, schema: &FeatureSchema, tagger: &dyn PosTagger) -> Result<FeatureVector> {
    check_schema(schema)?;
    Ok(vectorize(&analyze(&q.title, &q.body_html, tagger), schema))
}

/// Feature matrix in input order, one row per question.
pub fn featurize_all<'a, I>(questions: I, schema: &FeatureSchema, tagger: &dyn PosTagger) -> Result<Vec<FeatureVector>>
where
    I: IntoParallelIterator<Item = &'a QuestionRecord>,
    I::Iter: IndexedParallelIterator,
{
    check_schema(schema)?;
    Ok(questions
        .into_par_iter()
        .map(|q| vectorize(&analyze(&q.title, &q.body_html, tagger), schema))
        .collect())
}

/// Writes `id` plus one column per schema feature.
pub fn write_matrix_csv<W: Write>(
    out: W,
    schema: &FeatureSchema,
    ids: &[u64],
    vectors: &[FeatureVector],
) -> Result<()> {
    if ids.len() != vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: ids.len(),
            found: vectors.len(),
        });
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id".to_string()];
    header.extend(schema.column_names());
    w.write_record(&header)?;
    for (id, v) in ids.iter().zip(vectors) {
        if v.len() != schema.len() {
            return Err(Error::DimensionMismatch {
                expected: schema.len(),
                found: v.len(),
            });
        }
        let mut rec = vec![id.to_string()];
        rec.extend(v.to_row().iter().map(|x| format!("{}", *x as u64)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::Thresholds;
    use crate::textprep::LexiconTagger;

    fn record(title: &str, body: &str) -> QuestionRecord {
        QuestionRecord {
            id: 1,
            title: title.into(),
            body_html: body.into(),
            creation_utc: 0,
            reputation_at_post: 1,
            comments: vec![],
            answers: vec![],
            revisions: vec![],
        }
    }

    fn schema() -> FeatureSchema {
        FeatureSchema::new(
            Thresholds::default(),
            vec!["error".into(), "help".into(), "fix".into()],
            vec!["WRB+TO+VB".into()],
            vec!["DT+NN+BE".into()],
        )
    }

    #[test]
    fn help_title_only_hits_keyword() {
        let t = LexiconTagger::bundled();
        let v = featurize(&record("Help", ""), &schema(), &t).unwrap();
        assert_eq!(v.to_row(), vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn keyword_counted_per_occurrence() {
        let t = LexiconTagger::bundled();
        let v = featurize(
            &record("Error here", "<p>Another error. Errors everywhere.</p>"),
            &schema(),
            &t,
        )
        .unwrap();
        assert_eq!(v.keyword_counts[0], 3);
        assert_eq!(v.len(), schema().len());
    }

    #[test]
    fn stale_data_fingerprint_rejected() {
        let t = LexiconTagger::bundled();
        let mut s = schema();
        s.data_fingerprint = "f".repeat(64);
        assert!(matches!(
            featurize(&record("a", "b"), &s, &t),
            Err(Error::FingerprintMismatch { .. })
        ));
    }

    #[test]
    fn csv_header_follows_layout() {
        let t = LexiconTagger::bundled();
        let s = schema();
        let q = record("How to fix this", "<p>The code is <code>x</code>.</p>");
        let v = featurize_all(vec![&q], &s, &t).unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &s, &[1], &v).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,kw:error,kw:fix,kw:help,title:WRB+TO+VB,body:DT+NN+BE,complex_sentences,code_elements"
        );
        assert_eq!(lines.next().unwrap(), "1,0,1,0,1,1,0,1");
    }
}
