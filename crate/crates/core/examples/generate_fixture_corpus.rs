//! Writes the bundled 200-question fixture corpus to stdout or a file.
//!
//!     cargo run --example generate_fixture_corpus -- tests/fixtures/corpus.jsonl

use std::fs::File;
use std::io::{self, BufWriter};

use codeneed::corpus::write_lines;
use codeneed::synth::fixture_corpus;

pub const FIXTURE_SIZE: usize = 200;
pub const FIXTURE_SEED: u64 = 2024;

fn main() -> codeneed::error::Result<()> {
    let corpus = fixture_corpus(FIXTURE_SIZE, FIXTURE_SEED);
    match std::env::args().nth(1) {
        Some(path) => write_lines(BufWriter::new(File::create(path)?), &corpus),
        None => write_lines(io::stdout().lock(), &corpus),
    }
}
