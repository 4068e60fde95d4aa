use serde::{Deserialize, Serialize};

use super::record::{CorpusLine, QuestionRecord, Timestamp};
use crate::textprep::html::has_block_code;

/// Comment phrases that ask the asker for code, in match priority order.
pub const CODE_REQUEST_PHRASES: [&str; 17] = [
    "add code",
    "add your code",
    "add the code",
    "attach code",
    "attach your code",
    "attach the code",
    "include code",
    "include your code",
    "include the code",
    "give your code",
    "provide code",
    "provide the code",
    "provide your code",
    "show your code",
    "what you tried",
    "post your code",
    "post the code please",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Category {
    /// Code was requested and never supplied.
    Mico,
    /// Code was added after a comment asked for it.
    Coac,
    /// Code was present at submission.
    Cods,
    /// No code needed.
    Donc,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::Mico, Category::Coac, Category::Cods, Category::Donc];

    pub fn needs_code(self) -> bool {
        !matches!(self, Category::Donc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Mico => "MICO",
            Category::Coac => "COAC",
            Category::Cods => "CODS",
            Category::Donc => "DONC",
        }
    }
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryLabel {
    pub category: Category,
    pub needs_code: bool,
    /// Set when COAC was assigned without revision history to confirm when
    /// the code arrived.
    #[serde(default)]
    pub low_confidence: bool,
}

impl CategoryLabel {
    pub fn new(category: Category) -> Self {
        Self {
            category,
            needs_code: category.needs_code(),
            low_confidence: false,
        }
    }
}

/// A record together with its label, serialized as the record's fields plus
/// `category`, `needs_code` and `low_confidence`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledQuestion {
    #[serde(flatten)]
    pub record: QuestionRecord,
    #[serde(flatten)]
    pub label: CategoryLabel,
}

impl CorpusLine for LabeledQuestion {
    fn record(&self) -> &QuestionRecord {
        &self.record
    }
    fn record_mut(&mut self) -> &mut QuestionRecord {
        &mut self.record
    }
    fn check(&self) -> Result<(), String> {
        if self.label.needs_code != self.label.category.needs_code() {
            return Err(format!(
                "needs_code={} contradicts category {}",
                self.label.needs_code, self.label.category
            ));
        }
        Ok(())
    }
}

/// Lowercases and collapses whitespace runs to single spaces.
fn normalize_comment(text: &str) -> String {
    text.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// First key phrase (in list order) contained in the comment.
pub fn match_code_request(comment_text: &str) -> Option<&'static str> {
    let normalized = normalize_comment(comment_text);
    CODE_REQUEST_PHRASES
        .iter()
        .copied()
        .find(|phrase| normalized.contains(phrase))
}

/// Time of the earliest comment asking for code.
pub fn code_request_time(q: &QuestionRecord) -> Option<Timestamp> {
    q.comments
        .iter()
        .find(|c| match_code_request(&c.text).is_some())
        .map(|c| c.creation_utc)
}

/// Time of the earliest revision whose body carries block code.
pub fn first_code_revision_time(q: &QuestionRecord) -> Option<Timestamp> {
    q.revisions
        .iter()
        .find(|r| has_block_code(&r.body_html))
        .map(|r| r.creation_utc)
}

pub fn categorize(q: &QuestionRecord) -> CategoryLabel {
    let request = code_request_time(q);
    let has_code = has_block_code(&q.body_html);
    match (request, has_code) {
        (Some(_), false) => CategoryLabel::new(Category::Mico),
        (Some(requested_at), true) => match first_code_revision_time(q) {
            // a revision at the request's own timestamp still counts as a response
            Some(added_at) if added_at < requested_at => CategoryLabel::new(Category::Cods),
            Some(_) => CategoryLabel::new(Category::Coac),
            None => CategoryLabel {
                low_confidence: true,
                ..CategoryLabel::new(Category::Coac)
            },
        },
        (None, true) => CategoryLabel::new(Category::Cods),
        (None, false) => CategoryLabel::new(Category::Donc),
    }
}

pub fn label_all(records: Vec<QuestionRecord>) -> Vec<LabeledQuestion> {
    records
        .into_iter()
        .map(|record| {
            let label = categorize(&record);
            LabeledQuestion { record, label }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::record::{CommentRecord, RevisionRecord};

    fn question(body: &str) -> QuestionRecord {
        QuestionRecord {
            id: 1,
            title: "t".into(),
            body_html: body.into(),
            creation_utc: 0,
            reputation_at_post: 1,
            comments: vec![],
            answers: vec![],
            revisions: vec![],
        }
    }

    fn comment(text: &str, t: i64) -> CommentRecord {
        CommentRecord {
            text: text.into(),
            creation_utc: t,
        }
    }

    fn revision(body: &str, t: i64) -> RevisionRecord {
        RevisionRecord {
            creation_utc: t,
            body_html: body.into(),
        }
    }

    const CODE: &str = "<p>x</p><pre><code>a = 1</code></pre>";

    #[test]
    fn phrase_matching() {
        assert_eq!(
            match_code_request("Please add your code so we can help"),
            Some("add your code")
        );
        assert_eq!(match_code_request("the code works fine for me"), None);
        assert_eq!(
            match_code_request("Post   the code please!"),
            Some("post the code please")
        );
        assert_eq!(match_code_request("WHAT\tYOU\nTRIED?"), Some("what you tried"));
    }

    #[test]
    fn phrase_priority_follows_list_order() {
        // "add code" precedes "show your code" in the list
        assert_eq!(match_code_request("show your code or add code"), Some("add code"));
    }

    #[test]
    fn mico_when_requested_but_never_added() {
        let mut q = question("<p>no code here</p>");
        q.comments.push(comment("show your code", 10));
        assert_eq!(categorize(&q), CategoryLabel::new(Category::Mico));
    }

    #[test]
    fn cods_without_request() {
        let q = question(CODE);
        assert_eq!(categorize(&q).category, Category::Cods);
    }

    #[test]
    fn coac_when_code_revision_follows_request() {
        let mut q = question(CODE);
        q.comments.push(comment("add the code", 10));
        q.revisions.push(revision("<p>x</p>", 0));
        q.revisions.push(revision(CODE, 50));
        let label = categorize(&q);
        assert_eq!(label.category, Category::Coac);
        assert!(!label.low_confidence);
    }

    #[test]
    fn revision_at_request_time_counts_as_after() {
        let mut q = question(CODE);
        q.comments.push(comment("add the code", 10));
        q.revisions.push(revision(CODE, 10));
        assert_eq!(categorize(&q).category, Category::Coac);
    }

    #[test]
    fn cods_when_code_predates_request() {
        let mut q = question(CODE);
        q.comments.push(comment("provide the code", 10));
        q.revisions.push(revision(CODE, 0));
        assert_eq!(categorize(&q), CategoryLabel::new(Category::Cods));
    }

    #[test]
    fn coac_without_revisions_is_low_confidence() {
        let mut q = question(CODE);
        q.comments.push(comment("post your code", 10));
        let label = categorize(&q);
        assert_eq!(label.category, Category::Coac);
        assert!(label.low_confidence);
        assert!(label.needs_code);
    }

    #[test]
    fn donc_otherwise() {
        let mut q = question("<p>Which book is best? Use <code>inline</code></p>");
        q.comments.push(comment("the code is fine", 3));
        let label = categorize(&q);
        assert_eq!(label.category, Category::Donc);
        assert!(!label.needs_code);
    }

    #[test]
    fn labeled_round_trip_carries_label_fields() {
        let labeled = label_all(vec![question(CODE)]);
        let json = serde_json::to_string(&labeled[0]).unwrap();
        assert!(json.contains("\"category\":\"CODS\""));
        assert!(json.contains("\"needs_code\":true"));
        let back: LabeledQuestion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, labeled[0]);
    }
}
