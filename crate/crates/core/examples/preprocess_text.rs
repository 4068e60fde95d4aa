//! Walks one question body through every preprocessing step.
//!
//!     cargo run --example preprocess_text

use codeneed::features::analyze;
use codeneed::textprep::{prepare, remove_stopwords, stem, tokenize, LexiconTagger, PosTagger};

const TITLE: &str = "How to display an error message in my application";
const BODY: &str = "<p>I tried to show the message, but nothing happens. \
    The call <code>alert(msg)</code> never fires.</p>\
    <pre><code>function show(msg) {\n  alert(msg);\n}</code></pre>\
    <p>Is the browser blocking it?</p>";

fn main() {
    let prepared = prepare(TITLE, BODY);
    println!("title sentence: {}", prepared.title_sentence);
    println!("code spans: {:?}", prepared.code_spans);

    let tagger = LexiconTagger::bundled();
    for (i, sentence) in prepared.plain_sentences.iter().enumerate() {
        let tokens = tokenize(sentence);
        let tagged = tagger.tag(&tokens);
        let lowered: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
        let stems: Vec<String> = remove_stopwords(&lowered).iter().map(|t| stem(t)).collect();
        println!("\nsentence {i}: {sentence}");
        let pairs: Vec<String> = tagged
            .tokens
            .iter()
            .zip(&tagged.tags)
            .map(|(w, t)| format!("{w}/{t}"))
            .collect();
        println!("  tagged: {}", pairs.join(" "));
        println!("  stems:  {}", stems.join(" "));
    }

    let text = analyze(TITLE, BODY, &tagger);
    println!("\ntitle pattern symbols: {}", text.title_symbols.join(" "));
    println!("complex sentences: {}", text.complex_sentences);
    println!("code elements: {}", text.code_elements);
}
