use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seconds since the Unix epoch, UTC.
pub type Timestamp = i64;

/// One question as ingested from the line-delimited corpus format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionRecord {
    pub id: u64,
    pub title: String,
    pub body_html: String,
    pub creation_utc: Timestamp,
    pub reputation_at_post: u64,
    pub comments: Vec<CommentRecord>,
    pub answers: Vec<AnswerRecord>,
    #[serde(default)]
    pub revisions: Vec<RevisionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommentRecord {
    pub text: String,
    pub creation_utc: Timestamp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerRecord {
    pub creation_utc: Timestamp,
    pub is_accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionRecord {
    pub creation_utc: Timestamp,
    pub body_html: String,
}

impl QuestionRecord {
    /// The accepted answer, if any.
    pub fn accepted_answer(&self) -> Option<&AnswerRecord> {
        self.answers.iter().find(|a| a.is_accepted)
    }

    pub fn is_answered(&self) -> bool {
        !self.answers.is_empty()
    }

    fn sort_children(&mut self) {
        self.comments.sort_by_key(|c| c.creation_utc);
        self.answers.sort_by_key(|a| a.creation_utc);
        self.revisions.sort_by_key(|r| r.creation_utc);
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.comments.iter().any(|c| c.text.is_empty()) {
            return Err("comment text must be non-empty".into());
        }
        if self.answers.iter().filter(|a| a.is_accepted).count() > 1 {
            return Err("more than one accepted answer".into());
        }
        Ok(())
    }
}

/// Records that can be streamed through the line-delimited reader.
pub trait CorpusLine: DeserializeOwned {
    fn record(&self) -> &QuestionRecord;
    fn record_mut(&mut self) -> &mut QuestionRecord;
    fn check(&self) -> std::result::Result<(), String> {
        Ok(())
    }
}

impl CorpusLine for QuestionRecord {
    fn record(&self) -> &QuestionRecord {
        self
    }
    fn record_mut(&mut self) -> &mut QuestionRecord {
        self
    }
}

/// Reads one record per non-empty line.
///
/// Records keep file order; each record's comments, answers and revisions are
/// sorted by timestamp. Errors carry the 1-based line number.
pub fn read_lines<T: CorpusLine, R: BufRead>(input: R) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let mut item: T = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        item.record_mut().sort_children();
        item.record()
            .validate()
            .and_then(|_| item.check())
            .map_err(|message| Error::Parse {
                line: line_no,
                message,
            })?;
        let id = item.record().id;
        if !seen.insert(id) {
            return Err(Error::DuplicateId { id, line: line_no });
        }
        out.push(item);
    }
    Ok(out)
}

pub fn parse_question_stream<R: BufRead>(input: R) -> Result<Vec<QuestionRecord>> {
    read_lines(input)
}

/// Writes one JSON object per line.
pub fn write_lines<T: Serialize, W: Write>(mut out: W, items: &[T]) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut out, item)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
