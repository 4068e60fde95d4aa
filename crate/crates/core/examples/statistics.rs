//! The statistical toolbox on the published answer tables and small samples.
//!
//!     cargo run --example statistics

use codeneed::analysis::{chi_squared, cliffs_delta, cohens_kappa, mann_whitney, ContingencyTable, MwMethod};

fn main() -> codeneed::error::Result<()> {
    let resolved = ContingencyTable::new(
        vec!["MICO".into(), "COAC".into(), "CODS".into()],
        vec!["resolved".into(), "unresolved".into()],
        vec![vec![95, 305], vec![170, 216], vec![250, 157]],
    )?;
    let r = chi_squared(&resolved)?;
    println!("resolution x category: chi2 = {:.4}, dof = {:?}, p = {:.3e}", r.statistic, r.dof, r.p_value.unwrap());

    let answered = ContingencyTable::from_counts(vec![vec![288, 112], vec![320, 80], vec![371, 36]])?;
    let r = chi_squared(&answered)?;
    println!("answered x category:   chi2 = {:.4}, p = {:.3e}", r.statistic, r.p_value.unwrap());

    let a = [12.0, 35.0, 7.5, 60.0, 22.0, 41.0, 18.0];
    let b = [5.0, 9.0, 14.0, 3.5, 11.0, 20.0];
    for method in [MwMethod::Exact, MwMethod::Asymptotic] {
        let mw = mann_whitney(&a, &b, method)?;
        println!("Mann-Whitney {method:?}: U = {}, p = {:.4}", mw.statistic, mw.p_value.unwrap());
    }
    let d = cliffs_delta(&a, &b)?;
    println!("Cliff's delta = {:.3} ({})", d.statistic, d.magnitude.unwrap().as_str());

    let rater_a: Vec<bool> = (0..800).map(|i| i % 2 == 0).collect();
    let mut rater_b = rater_a.clone();
    for i in (0..800).step_by(100) {
        rater_b[i] = !rater_b[i];
    }
    println!("kappa over 800 items, 8 disagreements = {:.4}", cohens_kappa(&rater_a, &rater_b)?.statistic);
    Ok(())
}
