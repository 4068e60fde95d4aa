/// Punctuation marks that survive tokenization as tokens of their own.
pub const PUNCTUATION_TOKENS: [char; 6] = ['.', ',', '?', '!', ';', ':'];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Whitespace tokenizer. Leading and trailing punctuation is stripped from
/// each chunk; marks from [`PUNCTUATION_TOKENS`] are emitted as separate
/// tokens, anything else is dropped. Interior hyphens and apostrophes stay.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in sentence.split_whitespace() {
        let chunk = chunk.replace('\u{2019}', "'");
        let core_start = chunk.find(is_word_char);
        let Some(core_start) = core_start else {
            out.extend(chunk.chars().filter(|c| PUNCTUATION_TOKENS.contains(c)).map(String::from));
            continue;
        };
        let core_end = chunk
            .char_indices()
            .rev()
            .find(|(_, c)| is_word_char(*c))
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(chunk.len());
        out.extend(
            chunk[..core_start]
                .chars()
                .filter(|c| PUNCTUATION_TOKENS.contains(c))
                .map(String::from),
        );
        out.push(chunk[core_start..core_end].to_string());
        out.extend(
            chunk[core_end..]
                .chars()
                .filter(|c| PUNCTUATION_TOKENS.contains(c))
                .map(String::from),
        );
    }
    out
}

pub fn is_punctuation(token: &str) -> bool {
    let mut chars = token.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if PUNCTUATION_TOKENS.contains(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(tokenize("Why doesn't it work?"), vec!["Why", "doesn't", "it", "work", "?"]);
        assert_eq!(tokenize("drop-down menu"), vec!["drop-down", "menu"]);
        assert!(tokenize("   ").is_empty());
    }

    #[test]
    fn strips_brackets_keeps_marks() {
        assert_eq!(tokenize("(see: this), \"quoted\"!"), vec!["see", ":", "this", ",", "quoted", "!"]);
        assert_eq!(tokenize("-- ..."), vec![".", ".", "."]);
        assert_eq!(tokenize("it\u{2019}s"), vec!["it's"]);
    }
}
