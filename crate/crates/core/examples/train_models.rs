//! Trains all six classifiers on a seeded separable point cloud, reports
//! held-out accuracy, and round-trips one model through its file format.
//!
//!     cargo run --example train_models [seed]

use codeneed::models::{read_model, train, write_model, Algorithm, Hyperparams};
use codeneed::synth::separable_split;

fn main() -> codeneed::error::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let (tr, te) = separable_split(20, 400, 200, 2.0, seed);
    let hp = Hyperparams::default();
    for algorithm in Algorithm::ALL {
        let model = train(algorithm, &tr.x, &tr.y, seed, &hp, "synthetic")?;
        let preds = model.predict(&te.x)?;
        let hits = preds.iter().zip(&te.y).filter(|(p, y)| p.label == **y).count();
        println!("{algorithm:<8} accuracy {:.3}", hits as f64 / te.y.len() as f64);

        let mut buf = Vec::new();
        write_model(&model, &mut buf)?;
        let back = read_model(&buf[..])?;
        assert_eq!(back.predict(&te.x)?, preds);
    }
    Ok(())
}
