//! Bundled word lists. Their hash is part of every feature schema so that a
//! schema cannot be applied with different preprocessing data.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

pub const STOPWORDS_TXT: &str = include_str!("../../data/stopwords.txt");
pub const TAGGER_LEXICON_TSV: &str = include_str!("../../data/tagger_lexicon.tsv");
pub const ABBREVIATIONS_TXT: &str = include_str!("../../data/abbreviations.txt");

fn word_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

pub fn stopwords() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| word_lines(STOPWORDS_TXT).map(str::to_string).collect())
}

pub fn abbreviations() -> &'static HashSet<String> {
    static SET: OnceLock<HashSet<String>> = OnceLock::new();
    SET.get_or_init(|| word_lines(ABBREVIATIONS_TXT).map(str::to_string).collect())
}

pub fn lexicon() -> &'static HashMap<String, String> {
    static MAP: OnceLock<HashMap<String, String>> = OnceLock::new();
    MAP.get_or_init(|| {
        word_lines(TAGGER_LEXICON_TSV)
            .filter_map(|l| {
                let (word, tag) = l.split_once('\t')?;
                Some((word.to_string(), tag.trim().to_string()))
            })
            .collect()
    })
}

/// SHA-256 over the three bundled files, hex encoded.
pub fn data_fingerprint() -> &'static str {
    static FP: OnceLock<String> = OnceLock::new();
    FP.get_or_init(|| {
        let mut h = Sha256::new();
        for (name, body) in [
            ("stopwords.txt", STOPWORDS_TXT),
            ("tagger_lexicon.tsv", TAGGER_LEXICON_TSV),
            ("abbreviations.txt", ABBREVIATIONS_TXT),
        ] {
            h.update(name.as_bytes());
            h.update([0u8]);
            h.update((body.len() as u64).to_le_bytes());
            h.update(body.as_bytes());
        }
        hex::encode(h.finalize())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_load() {
        assert!(stopwords().contains("the"));
        assert!(!stopwords().contains("error"));
        assert!(!stopwords().contains("cannot"));
        assert!(abbreviations().contains("e.g."));
        assert!(lexicon().len() > 2000);
        assert_eq!(lexicon()["is"], "VBZ");
    }

    #[test]
    fn fingerprint_is_stable_hex() {
        let fp = data_fingerprint();
        assert_eq!(fp.len(), 64);
        assert_eq!(fp, data_fingerprint());
    }
}
