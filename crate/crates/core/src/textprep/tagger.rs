//! Part-of-speech tagging over the Penn Treebank tagset.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::data::lexicon;
use super::token::is_punctuation;

/// Every tag the taggers in this crate may emit.
pub const PTB_TAGS: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP",
    "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB",
    "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "``", "''",
    "-LRB-", "-RRB-", "#", "$",
];

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<String>,
}

impl TaggedSentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Assigns one tag per token. Implementations must be deterministic.
pub trait PosTagger: Send + Sync {
    fn tag(&self, tokens: &[String]) -> TaggedSentence;
}

/// Lexicon lookup plus suffix and context rules.
///
/// Unknown words: capitalized away from sentence start become `NNP`, numbers
/// `CD`, otherwise suffix rules (`-ing` VBG, `-ly` RB, `-ed` VBD, ...) with
/// `NN` as the fallback. A handful of context rules then resolve the
/// noun/verb ambiguity of base forms and the past tense/participle split.
pub struct LexiconTagger {
    lexicon: &'static HashMap<String, String>,
}

impl Default for LexiconTagger {
    fn default() -> Self {
        Self::bundled()
    }
}

const BE_FORMS: &[&str] = &["am", "is", "are", "was", "were", "be", "been", "being"];
const HAVE_FORMS: &[&str] = &["have", "has", "had", "having"];
const NOMINAL_CONTEXT: &[&str] = &["DT", "PRP$", "JJ", "JJR", "JJS", "CD", "POS", "IN", "PDT"];

impl LexiconTagger {
    pub fn bundled() -> Self {
        Self { lexicon: lexicon() }
    }

    fn lexical_tag(&self, token: &str, position: usize) -> String {
        if is_punctuation(token) {
            return match token {
                "," => ",".into(),
                ";" | ":" => ":".into(),
                _ => ".".into(),
            };
        }
        if is_number(token) {
            return "CD".into();
        }
        let lower = token.to_lowercase();
        if let Some(tag) = self.lexicon.get(&lower) {
            return tag.clone();
        }
        let capitalized = token.chars().next().is_some_and(char::is_uppercase);
        if capitalized && position > 0 {
            return "NNP".into();
        }
        suffix_tag(&lower).into()
    }
}

fn is_number(token: &str) -> bool {
    token.chars().any(|c| c.is_ascii_digit())
        && token.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '-' | '%'))
}

fn suffix_tag(lower: &str) -> &'static str {
    let n = lower.chars().count();
    if n > 4 && lower.ends_with("ing") {
        "VBG"
    } else if n > 3 && lower.ends_with("ly") {
        "RB"
    } else if n > 3 && lower.ends_with("ed") {
        "VBD"
    } else if ["able", "ible", "ful", "ous", "ive", "less", "ical", "ic", "al"]
        .iter()
        .any(|s| n > s.len() + 2 && lower.ends_with(s))
    {
        "JJ"
    } else if n > 3 && lower.ends_with('s') && !lower.ends_with("ss") && !lower.ends_with("us") {
        "NNS"
    } else {
        "NN"
    }
}

impl PosTagger for LexiconTagger {
    fn tag(&self, tokens: &[String]) -> TaggedSentence {
        let mut tags: Vec<String> = Vec::with_capacity(tokens.len());
        for (i, token) in tokens.iter().enumerate() {
            let mut tag = self.lexical_tag(token, i);
            if i > 0 {
                let prev_tag = tags[i - 1].as_str();
                let prev_word = tokens[i - 1].to_lowercase();
                let auxiliary = |w: &str| BE_FORMS.contains(&w) || HAVE_FORMS.contains(&w);
                let after_aux = auxiliary(&prev_word)
                    || (prev_tag == "RB" && i > 1 && auxiliary(&tokens[i - 2].to_lowercase()));
                match tag.as_str() {
                    "VB" if NOMINAL_CONTEXT.contains(&prev_tag) => tag = "NN".into(),
                    "VB" if matches!(prev_tag, "PRP" | "NNS" | "WDT" | "WP") => tag = "VBP".into(),
                    "VBZ" if NOMINAL_CONTEXT.contains(&prev_tag) => tag = "NNS".into(),
                    "VBD" if after_aux => tag = "VBN".into(),
                    "VBD" if matches!(prev_tag, "DT" | "PRP$") => tag = "JJ".into(),
                    _ => {}
                }
            }
            tags.push(tag);
        }
        TaggedSentence {
            tokens: tokens.to_vec(),
            tags,
        }
    }
}

pub fn pos_tag(tokens: &[String]) -> TaggedSentence {
    LexiconTagger::bundled().tag(tokens)
}
