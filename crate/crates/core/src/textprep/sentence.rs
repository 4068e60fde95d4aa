use super::data::abbreviations;

/// Splits code-free text into sentences.
///
/// A boundary is a run of `.`, `?` or `!` followed by end of text, or by
/// whitespace and an uppercase letter. A period closing a bundled
/// abbreviation (`e.g.`, `etc.`, ...) never ends a sentence.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (_, c) = chars[i];
        if !matches!(c, '.' | '?' | '!') {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < chars.len() && matches!(chars[j + 1].1, '.' | '?' | '!') {
            j += 1;
        }
        let end_byte = chars[j].0 + chars[j].1.len_utf8();
        let boundary = if j + 1 == chars.len() {
            true
        } else {
            let mut k = j + 1;
            let mut saw_space = false;
            while k < chars.len() && chars[k].1.is_whitespace() {
                saw_space = true;
                k += 1;
            }
            saw_space && k < chars.len() && chars[k].1.is_uppercase()
        };
        let abbreviation = c == '.' && j == i && ends_with_abbreviation(&text[start..end_byte]);
        if boundary && !abbreviation {
            push_trimmed(&mut out, &text[start..end_byte]);
            start = end_byte;
        }
        i = j + 1;
    }
    push_trimmed(&mut out, &text[start..]);
    out
}

fn ends_with_abbreviation(segment: &str) -> bool {
    let last = segment.split_whitespace().last().unwrap_or("");
    abbreviations().contains(&last.to_lowercase())
}

fn push_trimmed(out: &mut Vec<String>, s: &str) {
    let t = s.trim();
    if !t.is_empty() {
        out.push(t.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_split() {
        assert_eq!(split_sentences("It fails. I tried twice."), vec!["It fails.", "I tried twice."]);
        assert_eq!(split_sentences("e.g. this one"), vec!["e.g. this one"]);
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   ").is_empty());
    }

    #[test]
    fn lowercase_after_period_does_not_split() {
        assert_eq!(split_sentences("call foo. then bar"), vec!["call foo. then bar"]);
    }

    #[test]
    fn abbreviation_before_capital() {
        assert_eq!(
            split_sentences("Use a list, e.g. Vec or VecDeque. Done!"),
            vec!["Use a list, e.g. Vec or VecDeque.", "Done!"]
        );
    }

    #[test]
    fn question_and_exclamation_runs() {
        assert_eq!(split_sentences("Why?! It broke... Now what?"), vec!["Why?!", "It broke...", "Now what?"]);
    }
}
