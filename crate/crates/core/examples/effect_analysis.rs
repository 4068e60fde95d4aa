//! Answer-outcome analysis over a synthetic corpus shaped like the published
//! MICO/COAC/CODS sample.
//!
//!     cargo run --example effect_analysis [seed]

use codeneed::analysis::{effect_report, DayWindow};
use codeneed::corpus::label_all;
use codeneed::synth::{outcome_corpus, published_shapes};

fn main() -> codeneed::error::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let corpus = label_all(outcome_corpus(&published_shapes(), 1, seed)?);
    let report = effect_report(&corpus, DayWindow::default());
    print!("{}", report.render_text());
    Ok(())
}
