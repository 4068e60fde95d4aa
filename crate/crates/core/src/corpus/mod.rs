//! Question records, heuristic labeling and chronological splitting.

pub mod label;
pub mod record;
pub mod split;

pub use label::{
    categorize, code_request_time, first_code_revision_time, label_all, match_code_request,
    Category, CategoryLabel, LabeledQuestion, CODE_REQUEST_PHRASES,
};
pub use record::{
    parse_question_stream, read_lines, write_lines, AnswerRecord, CommentRecord, QuestionRecord,
    RevisionRecord, Timestamp,
};
pub use split::{chronological_split, Split, SplitManifest};
pub use crate::textprep::html::has_block_code;
