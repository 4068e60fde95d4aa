//! Keyword, POS-pattern, sentence-structure and code-element features.

pub mod extract;
pub mod schema;
pub mod stats;
pub mod vector;

pub use extract::{
    analyze, count_complex_sentences, keyword_stems, ngrams, pattern_symbol, QuestionText, BE_LEXEMES,
    CONJUNCTIONS, MAX_PATTERN_LEN, MIN_PATTERN_LEN,
};
pub use schema::{
    analyze_corpus, display_pattern, learn_schema, mine_pos_patterns, select_keywords, symbol_display_name,
    FeatureSchema, PatternSource, Selection, TrainingText,
};
pub use stats::{diff_ratio, ClassCounts, TermStat, Thresholds};
pub use vector::{featurize, featurize_all, vectorize, write_matrix_csv, FeatureVector};
