use crate::textprep::{self, is_punctuation, prepare, stem, tokenize, PosTagger};

/// Words marking the complex (two-clause) sentences counted as a feature.
pub const CONJUNCTIONS: [&str; 6] = ["but", "however", "except", "while", "when", "because"];

/// Lexemes rendered with the refined `BE` symbol in pattern sequences.
pub const BE_LEXEMES: [&str; 8] = ["am", "is", "are", "was", "were", "be", "been", "being"];

/// Pattern alphabet symbol for be-forms.
pub const BE_SYMBOL: &str = "BE";

pub const MIN_PATTERN_LEN: usize = 3;
pub const MAX_PATTERN_LEN: usize = 6;

/// Everything the feature families need from one question.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuestionText {
    /// Lowercased, stop-word-free, stemmed tokens of title and body.
    pub keyword_stems: Vec<String>,
    /// Pattern symbols of the title, tagged as one sentence.
    pub title_symbols: Vec<String>,
    /// Pattern symbols of each body sentence.
    pub body_symbols: Vec<Vec<String>>,
    pub complex_sentences: usize,
    pub code_elements: usize,
}

pub fn pattern_symbol(token: &str, tag: &str) -> String {
    if BE_LEXEMES.contains(&token.to_lowercase().as_str()) {
        BE_SYMBOL.to_string()
    } else {
        tag.to_string()
    }
}

fn symbols(tagger: &dyn PosTagger, tokens: &[String]) -> Vec<String> {
    let tagged = tagger.tag(tokens);
    tagged
        .tokens
        .iter()
        .zip(&tagged.tags)
        .map(|(tok, tag)| pattern_symbol(tok, tag))
        .collect()
}

/// Keyword candidates: lowercase, drop punctuation and tokens without a
/// letter, drop stop words, then stem.
pub fn keyword_stems(tokens: &[String]) -> Vec<String> {
    let lowered: Vec<String> = tokens
        .iter()
        .filter(|t| !is_punctuation(t) && t.chars().any(char::is_alphabetic))
        .map(|t| t.to_lowercase())
        .collect();
    textprep::remove_stopwords(&lowered)
        .iter()
        .map(|t| stem(t))
        .collect()
}

/// Number of sentences containing at least one conjunction as a whole word.
pub fn count_complex_sentences<S: AsRef<str>>(sentences: &[S]) -> usize {
    sentences
        .iter()
        .filter(|s| {
            tokenize(s.as_ref())
                .iter()
                .any(|t| CONJUNCTIONS.contains(&t.to_lowercase().as_str()))
        })
        .count()
}

pub fn analyze(title: &str, body_html: &str, tagger: &dyn PosTagger) -> QuestionText {
    let prepared = prepare(title, body_html);
    let title_tokens = tokenize(&prepared.title_sentence);
    let body_tokens: Vec<Vec<String>> = prepared.plain_sentences.iter().map(|s| tokenize(s)).collect();

    let mut all_tokens = title_tokens.clone();
    all_tokens.extend(body_tokens.iter().flatten().cloned());

    QuestionText {
        keyword_stems: keyword_stems(&all_tokens),
        title_symbols: symbols(tagger, &title_tokens),
        body_symbols: body_tokens.iter().map(|t| symbols(tagger, t)).collect(),
        complex_sentences: count_complex_sentences(&prepared.plain_sentences),
        code_elements: prepared.code_spans.len(),
    }
}

/// Every contiguous window of length 3..=6, as `+`-joined keys.
pub fn ngrams(symbols: &[String]) -> impl Iterator<Item = String> + '_ {
    (MIN_PATTERN_LEN..=MAX_PATTERN_LEN)
        .flat_map(move |n| symbols.windows(n).map(|w| w.join("+")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textprep::LexiconTagger;

    #[test]
    fn complex_sentence_examples() {
        assert_eq!(
            count_complex_sentences(&[
                "I tried to order the rows by code in Ruby on Rails, but this doesn't solve the problem"
            ]),
            1
        );
        assert_eq!(count_complex_sentences(&["It works fine."]), 0);
        assert_eq!(count_complex_sentences(&["X but Y because Z", "plain"]), 1);
        assert_eq!(count_complex_sentences(&["Butter is not a conjunction"]), 0);
        assert_eq!(count_complex_sentences(&["WHEN it runs"]), 1);
    }

    #[test]
    fn code_elements_counted_from_all_code_tags() {
        let t = LexiconTagger::bundled();
        let q = analyze(
            "t",
            "<p>I call <code>response.json();</code> with a <code>float</code></p>",
            &t,
        );
        assert_eq!(q.code_elements, 2);
        assert_eq!(analyze("t", "<p>nothing</p>", &t).code_elements, 0);
        assert_eq!(analyze("t", "<pre><code>a\nb</code></pre>", &t).code_elements, 1);
    }

    #[test]
    fn title_never_feeds_sentence_or_code_counts() {
        let t = LexiconTagger::bundled();
        let q = analyze("It fails but why", "", &t);
        assert_eq!(q.complex_sentences, 0);
        assert_eq!(q.code_elements, 0);
        assert_eq!(q.keyword_stems, vec!["fail"]);
    }

    #[test]
    fn be_forms_get_refined_symbol() {
        let t = LexiconTagger::bundled();
        let q = analyze("How to be a developer", "", &t);
        assert_eq!(q.title_symbols, vec!["WRB", "TO", "BE", "DT", "NN"]);
    }

    #[test]
    fn ngram_lengths() {
        let s: Vec<String> = ["A", "B", "C", "D"].map(String::from).to_vec();
        let grams: Vec<String> = ngrams(&s).collect();
        assert_eq!(grams, vec!["A+B+C", "B+C+D", "A+B+C+D"]);
        let two: Vec<String> = ["A", "B"].map(String::from).to_vec();
        assert_eq!(ngrams(&two).count(), 0);
    }
}
