use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::extract::{analyze, ngrams, QuestionText, CONJUNCTIONS};
use super::stats::{ClassCounts, TermStat, Thresholds};
use crate::corpus::LabeledQuestion;
use crate::error::{Error, Result};
use crate::textprep::{data_fingerprint, PosTagger};

pub const SCHEMA_FORMAT_VERSION: u32 = 1;

/// Learned vocabulary fixing the feature vector layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub format_version: u32,
    pub thresholds: Thresholds,
    pub keywords: Vec<String>,
    /// Tag symbols joined by `+`.
    pub title_patterns: Vec<String>,
    pub body_patterns: Vec<String>,
    pub conjunctions: Vec<String>,
    /// Hash of the bundled preprocessing data the schema was learned with.
    pub data_fingerprint: String,
    pub fingerprint: String,
}

/// Selected terms with their statistics, kept alongside the schema.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub keywords: Vec<TermStat>,
    pub title_patterns: Vec<TermStat>,
    pub body_patterns: Vec<TermStat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternSource {
    Title,
    Body,
}

/// Analyzed training question with its class.
pub struct TrainingText {
    pub needs_code: bool,
    pub text: QuestionText,
}

pub fn analyze_corpus(train: &[LabeledQuestion], tagger: &dyn PosTagger) -> Vec<TrainingText> {
    train
        .par_iter()
        .map(|q| TrainingText {
            needs_code: q.label.needs_code,
            text: analyze(&q.record.title, &q.record.body_html, tagger),
        })
        .collect()
}

fn check_both_classes(texts: &[TrainingText]) -> Result<()> {
    let positives = texts.iter().filter(|t| t.needs_code).count();
    let negatives = texts.len() - positives;
    if positives == 0 {
        return Err(Error::ClassTooSmall {
            class: "needs-code",
            count: 0,
            required: 1,
        });
    }
    if negatives == 0 {
        return Err(Error::ClassTooSmall {
            class: "no-code",
            count: 0,
            required: 1,
        });
    }
    Ok(())
}

pub fn keyword_counts(texts: &[TrainingText]) -> ClassCounts {
    texts
        .par_iter()
        .map(|t| {
            let mut c = ClassCounts::default();
            for s in &t.text.keyword_stems {
                c.add(s, t.needs_code, 1);
            }
            c
        })
        .reduce(ClassCounts::default, ClassCounts::merge)
}

pub fn pattern_counts(texts: &[TrainingText], source: PatternSource) -> ClassCounts {
    texts
        .par_iter()
        .map(|t| {
            let mut c = ClassCounts::default();
            let mut count_seq = |seq: &[String]| {
                for gram in ngrams(seq) {
                    c.add(&gram, t.needs_code, 1);
                }
            };
            match source {
                PatternSource::Title => count_seq(&t.text.title_symbols),
                PatternSource::Body => t.text.body_symbols.iter().for_each(|s| count_seq(s)),
            }
            c
        })
        .reduce(ClassCounts::default, ClassCounts::merge)
}

/// Stems passing the keyword thresholds, counted as total occurrences.
pub fn select_keywords(texts: &[TrainingText], thresholds: &Thresholds) -> Result<Vec<TermStat>> {
    check_both_classes(texts)?;
    Ok(keyword_counts(texts).select(thresholds.keyword_d_min, thresholds.r_max))
}

/// Tag n-grams (length 3 to 6) passing the title or body thresholds.
pub fn mine_pos_patterns(
    texts: &[TrainingText],
    source: PatternSource,
    thresholds: &Thresholds,
) -> Result<Vec<TermStat>> {
    check_both_classes(texts)?;
    let d_min = match source {
        PatternSource::Title => thresholds.title_d_min,
        PatternSource::Body => thresholds.body_d_min,
    };
    Ok(pattern_counts(texts, source).select(d_min, thresholds.r_max))
}

/// Learns the full schema from training questions only.
pub fn learn_schema(
    train: &[LabeledQuestion],
    thresholds: Thresholds,
    tagger: &dyn PosTagger,
) -> Result<(FeatureSchema, Selection)> {
    let texts = analyze_corpus(train, tagger);
    let selection = Selection {
        keywords: select_keywords(&texts, &thresholds)?,
        title_patterns: mine_pos_patterns(&texts, PatternSource::Title, &thresholds)?,
        body_patterns: mine_pos_patterns(&texts, PatternSource::Body, &thresholds)?,
    };
    let terms = |v: &[TermStat]| v.iter().map(|s| s.term.clone()).collect::<Vec<_>>();
    let schema = FeatureSchema::new(
        thresholds,
        terms(&selection.keywords),
        terms(&selection.title_patterns),
        terms(&selection.body_patterns),
    );
    Ok((schema, selection))
}

impl FeatureSchema {
    /// Builds a schema over the current preprocessing data. Lists are sorted
    /// and deduplicated.
    pub fn new(
        thresholds: Thresholds,
        keywords: Vec<String>,
        title_patterns: Vec<String>,
        body_patterns: Vec<String>,
    ) -> Self {
        let tidy = |mut v: Vec<String>| {
            v.sort();
            v.dedup();
            v
        };
        let mut schema = Self {
            format_version: SCHEMA_FORMAT_VERSION,
            thresholds,
            keywords: tidy(keywords),
            title_patterns: tidy(title_patterns),
            body_patterns: tidy(body_patterns),
            conjunctions: CONJUNCTIONS.iter().map(|s| s.to_string()).collect(),
            data_fingerprint: data_fingerprint().to_string(),
            fingerprint: String::new(),
        };
        schema.fingerprint = schema.compute_fingerprint();
        schema
    }

    pub fn compute_fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.format_version.to_le_bytes());
        for (name, list) in [
            ("keywords", &self.keywords),
            ("title", &self.title_patterns),
            ("body", &self.body_patterns),
            ("conjunctions", &self.conjunctions),
        ] {
            h.update(name.as_bytes());
            h.update((list.len() as u64).to_le_bytes());
            for item in list {
                h.update(item.as_bytes());
                h.update([0u8]);
            }
        }
        h.update(self.data_fingerprint.as_bytes());
        hex::encode(h.finalize())
    }

    pub fn len(&self) -> usize {
        self.keywords.len() + self.title_patterns.len() + self.body_patterns.len() + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Column names in vector order.
    pub fn column_names(&self) -> Vec<String> {
        let mut cols = Vec::with_capacity(self.len());
        cols.extend(self.keywords.iter().map(|k| format!("kw:{k}")));
        cols.extend(self.title_patterns.iter().map(|p| format!("title:{p}")));
        cols.extend(self.body_patterns.iter().map(|p| format!("body:{p}")));
        cols.push("complex_sentences".into());
        cols.push("code_elements".into());
        cols
    }

    /// Fails unless the schema was learned with the bundled preprocessing
    /// data and its fingerprint still matches its contents.
    pub fn verify(&self) -> Result<()> {
        if self.format_version != SCHEMA_FORMAT_VERSION {
            return Err(Error::Version {
                expected: SCHEMA_FORMAT_VERSION,
                found: self.format_version,
            });
        }
        if self.data_fingerprint != data_fingerprint() {
            return Err(Error::FingerprintMismatch {
                expected: data_fingerprint().to_string(),
                found: self.data_fingerprint.clone(),
            });
        }
        let computed = self.compute_fingerprint();
        if computed != self.fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: computed,
                found: self.fingerprint.clone(),
            });
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let schema: Self = serde_json::from_reader(input)?;
        schema.verify()?;
        Ok(schema)
    }
}

/// Readable name for a pattern symbol, e.g. `RB` -> `adverb`.
pub fn symbol_display_name(symbol: &str) -> &str {
    match symbol {
        "RB" | "RBR" | "RBS" => "adverb",
        "BE" => "verb be",
        "DT" => "determiner",
        "NN" | "NNS" | "NNP" | "NNPS" => "noun",
        "VBG" => "gerund",
        "WRB" => "wh-adverb",
        "TO" => "infinitive to",
        other => other,
    }
}

/// Renders `RB+BE+DT+NN` as `[adverb] [verb be] [determiner] [noun]`.
pub fn display_pattern(pattern: &str) -> String {
    pattern
        .split('+')
        .map(|s| format!("[{}]", symbol_display_name(s)))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feature_table_renderings() {
        assert_eq!(display_pattern("RB+BE+DT+NN"), "[adverb] [verb be] [determiner] [noun]");
        assert_eq!(display_pattern("BE+VBG+DT"), "[verb be] [gerund] [determiner]");
        assert_eq!(display_pattern("WRB+TO+BE+NN"), "[wh-adverb] [infinitive to] [verb be] [noun]");
        assert_eq!(display_pattern("PRP+VBD+IN"), "[PRP] [VBD] [IN]");
    }

    #[test]
    fn schema_sorts_and_fingerprints() {
        let s = FeatureSchema::new(
            Thresholds::default(),
            vec!["fix".into(), "error".into(), "fix".into()],
            vec![],
            vec!["RB+BE+DT".into()],
        );
        assert_eq!(s.keywords, vec!["error", "fix"]);
        assert_eq!(s.len(), 5);
        s.verify().unwrap();
        let mut buf = Vec::new();
        s.write(&mut buf).unwrap();
        assert_eq!(FeatureSchema::read(&buf[..]).unwrap(), s);
        assert!(String::from_utf8(buf).unwrap().contains("\"keyword_d_min\": 50"));
    }

    #[test]
    fn tampered_schema_rejected() {
        let mut s = FeatureSchema::new(Thresholds::default(), vec!["a".into()], vec![], vec![]);
        s.keywords.push("b".into());
        assert!(matches!(s.verify(), Err(Error::FingerprintMismatch { .. })));
        let mut s = FeatureSchema::new(Thresholds::default(), vec![], vec![], vec![]);
        s.data_fingerprint = "0".repeat(64);
        s.fingerprint = s.compute_fingerprint();
        assert!(matches!(s.verify(), Err(Error::FingerprintMismatch { .. })));
    }
}
