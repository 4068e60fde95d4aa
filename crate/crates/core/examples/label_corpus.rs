//! Labels a line-delimited question file and prints the category counts.
//!
//!     cargo run --example label_corpus [questions.jsonl]
//!
//! Without an argument the bundled fixture corpus is used.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use codeneed::corpus::{label_all, parse_question_stream, Category};

fn main() -> codeneed::error::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corpus.jsonl").into());
    let labeled = label_all(parse_question_stream(BufReader::new(File::open(&path)?))?);

    let mut counts: BTreeMap<Category, usize> = BTreeMap::new();
    for q in &labeled {
        *counts.entry(q.label.category).or_default() += 1;
    }
    for c in Category::ALL {
        println!("{c:<5} {:>5}", counts.get(&c).copied().unwrap_or(0));
    }
    let low = labeled.iter().filter(|q| q.label.low_confidence).count();
    println!("low-confidence COAC labels: {low}");
    if let Some(q) = labeled.iter().find(|q| q.label.category == Category::Coac) {
        println!("\nfirst COAC question: #{} {:?}", q.record.id, q.record.title);
    }
    Ok(())
}
