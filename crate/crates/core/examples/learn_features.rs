//! Learns keyword and tag-pattern vocabularies from the fixture corpus and
//! prints the strongest terms with their d/r statistics.
//!
//!     cargo run --example learn_features

use std::fs::File;
use std::io::BufReader;

use codeneed::corpus::{chronological_split, label_all, parse_question_stream};
use codeneed::features::{display_pattern, featurize, learn_schema, TermStat, Thresholds};
use codeneed::textprep::LexiconTagger;

fn show(title: &str, stats: &[TermStat], pattern: bool) {
    let mut top: Vec<&TermStat> = stats.iter().collect();
    top.sort_by(|a, b| b.d.cmp(&a.d).then_with(|| a.term.cmp(&b.term)));
    println!("\n{title} ({} selected)", stats.len());
    println!("{:<44} {:>5} {:>5} {:>5} {:>7}", "term", "f_c", "f_nc", "d", "r%");
    for s in top.into_iter().take(8) {
        let name = if pattern { display_pattern(&s.term) } else { s.term.clone() };
        println!("{:<44} {:>5} {:>5} {:>5} {:>7.1}", name, s.f_c, s.f_nc, s.d, s.r);
    }
}

fn main() -> codeneed::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus.jsonl");
    let labeled = label_all(parse_question_stream(BufReader::new(File::open(path)?))?);
    let split = chronological_split(&labeled, 0.7)?;
    let thresholds = Thresholds {
        keyword_d_min: 30,
        body_d_min: 30,
        title_d_min: 15,
        r_max: 50.0,
    };
    let tagger = LexiconTagger::bundled();
    let (schema, selection) = learn_schema(&split.train, thresholds, &tagger)?;
    println!("schema fingerprint {}", schema.fingerprint);
    println!("{} features", schema.len());
    show("keywords", &selection.keywords, false);
    show("title patterns", &selection.title_patterns, true);
    show("body patterns", &selection.body_patterns, true);

    let q = &split.test[0].record;
    let v = featurize(q, &schema, &tagger)?;
    let nonzero = v.to_row().iter().filter(|x| **x > 0.0).count();
    println!("\nquestion #{}: {nonzero} non-zero features, {} code elements", q.id, v.code_element_count);
    Ok(())
}
