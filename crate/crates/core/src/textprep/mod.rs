//! Deterministic text preprocessing: HTML stripping with code capture,
//! sentence splitting, tokenization, stop words, stemming and tagging.

pub mod data;
pub mod html;
pub mod porter;
pub mod sentence;
pub mod tagger;
pub mod token;

use serde::{Deserialize, Serialize};

pub use data::data_fingerprint;
pub use html::has_block_code;
pub use porter::stem;
pub use sentence::split_sentences;
pub use tagger::{pos_tag, LexiconTagger, PosTagger, TaggedSentence, PTB_TAGS};
pub use token::{is_punctuation, tokenize};

use html::{decode_entities, events, Event, OpenElements};

/// Body text with code removed, plus the removed code.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrippedHtml {
    /// Text outside `<code>` elements, whitespace collapsed.
    pub plain: String,
    /// Inner text of every `<code>` element, inline and block, in order.
    pub code_spans: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedText {
    pub title_sentence: String,
    pub plain_sentences: Vec<String>,
    pub code_spans: Vec<String>,
}

pub fn strip_html(body_html: &str) -> StrippedHtml {
    let mut open = OpenElements::default();
    let mut plain = String::new();
    let mut spans = Vec::new();
    let mut current: Option<String> = None;
    for ev in events(body_html) {
        match &ev {
            Event::Text(t) => {
                let text = decode_entities(t);
                match current.as_mut() {
                    Some(span) => span.push_str(&text),
                    None => plain.push_str(&text),
                }
            }
            Event::Open(name) => {
                if name == "code" && current.is_none() {
                    current = Some(String::new());
                } else if current.is_none() {
                    plain.push(' ');
                }
            }
            Event::Close(_) => {}
        }
        open.apply(&ev);
        if let Event::Close(_) = ev {
            if current.is_some() && open.depth_of("code") == 0 {
                spans.extend(current.take());
            } else if current.is_none() {
                plain.push(' ');
            }
        }
    }
    spans.extend(current.take());
    StrippedHtml {
        plain: collapse_whitespace(&plain),
        code_spans: spans,
    }
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn prepare(title: &str, body_html: &str) -> PreparedText {
    let stripped = strip_html(body_html);
    PreparedText {
        title_sentence: collapse_whitespace(title),
        plain_sentences: split_sentences(&stripped.plain),
        code_spans: stripped.code_spans,
    }
}

/// Drops tokens found in the bundled stop-word list. Expects lowercase input.
pub fn remove_stopwords(tokens: &[String]) -> Vec<String> {
    let stop = data::stopwords();
    tokens
        .iter()
        .filter(|t| !stop.contains(t.as_str()))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inline_code_is_captured() {
        let s = strip_html("<p>call <code>foo()</code> here</p>");
        assert_eq!(s.plain, "call here");
        assert_eq!(s.code_spans, vec!["foo()"]);
    }

    #[test]
    fn block_code_keeps_newlines() {
        let s = strip_html("<pre><code>x=1\ny=2</code></pre>");
        assert_eq!(s.plain, "");
        assert_eq!(s.code_spans, vec!["x=1\ny=2"]);
    }

    #[test]
    fn entities_decoded_everywhere() {
        assert_eq!(strip_html("a &amp; b").plain, "a & b");
        let s = strip_html("<code>a &lt; b</code>");
        assert_eq!(s.code_spans, vec!["a < b"]);
    }

    #[test]
    fn nested_markup_inside_code_stays_in_span() {
        let s = strip_html("<pre><code>fn <b>main</b>()</code></pre> done <code>unclosed");
        assert_eq!(s.code_spans, vec!["fn main()", "unclosed"]);
        assert_eq!(s.plain, "done");
    }

    #[test]
    fn prepare_splits_body_only() {
        let p = prepare("  Why   does it fail? ", "<p>It fails. I tried <code>x()</code> twice.</p>");
        assert_eq!(p.title_sentence, "Why does it fail?");
        assert_eq!(p.plain_sentences, vec!["It fails.", "I tried twice."]);
        assert_eq!(p.code_spans, vec!["x()"]);
    }

    #[test]
    fn stopword_examples() {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(remove_stopwords(&v(&["the", "error", "is", "here"])), v(&["error"]));
        assert!(remove_stopwords(&[]).is_empty());
        assert_eq!(remove_stopwords(&v(&["error"])), v(&["error"]));
    }

    fn non_ws(s: &str) -> usize {
        s.chars().filter(|c| !c.is_whitespace()).count()
    }

    proptest! {
        // every character outside tags is either plain text or code
        #[test]
        fn strip_html_accounts_for_all_text(
            parts in proptest::collection::vec(
                prop_oneof![
                    "[a-z ]{0,8}".prop_map(|s| s),
                    Just("<p>".to_string()), Just("</p>".to_string()),
                    Just("<code>".to_string()), Just("</code>".to_string()),
                    Just("<pre>".to_string()), Just("</pre>".to_string()),
                    Just("<br/>".to_string()),
                ], 0..20)
        ) {
            let html: String = parts.concat();
            let text_only: String = parts.iter().filter(|p| !p.starts_with('<')).cloned().collect();
            let s = strip_html(&html);
            let code: usize = s.code_spans.iter().map(|c| non_ws(c)).sum();
            prop_assert_eq!(non_ws(&s.plain) + code, non_ws(&text_only));
            prop_assert!(!s.plain.contains('<'));
        }

        #[test]
        fn preprocessing_is_pure(text in "[A-Za-z .,?!']{0,60}") {
            prop_assert_eq!(split_sentences(&text), split_sentences(&text));
            let toks = tokenize(&text);
            let a = pos_tag(&toks);
            prop_assert_eq!(a.tags.len(), toks.len());
            prop_assert_eq!(a, pos_tag(&toks));
        }
    }
}
