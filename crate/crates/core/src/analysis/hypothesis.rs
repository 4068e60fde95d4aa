use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::special::{chi2_sf, normal_sf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Magnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

impl Magnitude {
    /// Conventional Cliff's delta bands on `|delta|`: 0.147, 0.33, 0.474.
    pub fn of_delta(delta: f64) -> Self {
        let d = delta.abs();
        if d < 0.147 {
            Magnitude::Negligible
        } else if d < 0.33 {
            Magnitude::Small
        } else if d < 0.474 {
            Magnitude::Medium
        } else {
            Magnitude::Large
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Magnitude::Negligible => "negligible",
            Magnitude::Small => "small",
            Magnitude::Medium => "medium",
            Magnitude::Large => "large",
        }
    }
}

/// Outcome of one statistical procedure. `p_value` is absent for pure
/// effect-size or agreement measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dof: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub effect_size: Option<f64>,
    pub magnitude: Option<Magnitude>,
}

impl TestResult {
    fn plain(statistic: f64, p_value: Option<f64>) -> Self {
        Self {
            statistic,
            p_value,
            dof: None,
            method: None,
            effect_size: None,
            magnitude: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContingencyTable {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl ContingencyTable {
    pub fn new(rows: Vec<String>, columns: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        if counts.len() != rows.len() || counts.iter().any(|r| r.len() != columns.len()) {
            return Err(Error::InvalidInput("table shape disagrees with its labels".into()));
        }
        Ok(Self { rows, columns, counts })
    }

    /// Unlabeled table, rows `r0, r1, ...` and columns `c0, c1, ...`.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let rows = (0..counts.len()).map(|i| format!("r{i}")).collect();
        let columns = (0..counts.first().map_or(0, Vec::len)).map(|j| format!("c{j}")).collect();
        Self::new(rows, columns, counts)
    }
}

/// Pearson chi-squared test of independence, without continuity correction.
pub fn chi_squared(t: &ContingencyTable) -> Result<TestResult> {
    let r = t.counts.len();
    let c = t.columns.len();
    if r < 2 || c < 2 {
        return Err(Error::InvalidInput(format!("need at least a 2x2 table, got {r}x{c}")));
    }
    let row_sums: Vec<f64> = t.counts.iter().map(|row| row.iter().sum::<u64>() as f64).collect();
    let col_sums: Vec<f64> = (0..c).map(|j| t.counts.iter().map(|row| row[j]).sum::<u64>() as f64).collect();
    if let Some(i) = row_sums.iter().position(|&s| s == 0.0) {
        return Err(Error::InvalidInput(format!("row `{}` has zero total", t.rows[i])));
    }
    if let Some(j) = col_sums.iter().position(|&s| s == 0.0) {
        return Err(Error::InvalidInput(format!("column `{}` has zero total", t.columns[j])));
    }
    let total: f64 = row_sums.iter().sum();
    let mut stat = 0.0;
    for (i, row) in t.counts.iter().enumerate() {
        for (j, &o) in row.iter().enumerate() {
            let e = row_sums[i] * col_sums[j] / total;
            stat += (o as f64 - e).powi(2) / e;
        }
    }
    let dof = (r - 1) * (c - 1);
    let mut res = TestResult::plain(stat, Some(chi2_sf(stat, dof as f64).clamp(0.0, 1.0)));
    res.dof = Some(dof);
    Ok(res)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MwMethod {
    /// Exact when `|a| * |b| <= 400`, asymptotic otherwise.
    #[default]
    Auto,
    Exact,
    Asymptotic,
}

pub const EXACT_PRODUCT_LIMIT: usize = 400;

/// Midranks (1-based) of the pooled sample, plus tie group sizes.
fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let mut e = k;
        while e + 1 < order.len() && pooled[order[e + 1]] == pooled[order[k]] {
            e += 1;
        }
        let r = (k + e) as f64 / 2.0 + 1.0;
        for &i in &order[k..=e] {
            ranks[i] = r;
        }
        ties.push(e - k + 1);
        k = e + 1;
    }
    (ranks, ties)
}

/// Exact permutation distribution of the rank sum of `m` items drawn from
/// the given doubled (hence integral) midranks. Returns (P(T <= t), P(T >= t)).
fn exact_tails(doubled: &[usize], m: usize, t_obs: usize) -> (f64, f64) {
    let max_sum: usize = doubled.iter().sum();
    // ways[j][s]: number of j-subsets with doubled-rank sum s
    let mut ways = vec![vec![0u128; max_sum + 1]; m + 1];
    ways[0][0] = 1;
    for &r in doubled {
        for j in (1..=m).rev() {
            let (lo, hi) = ways.split_at_mut(j);
            for s in (r..=max_sum).rev() {
                hi[0][s] += lo[j - 1][s - r];
            }
        }
    }
    let total: u128 = ways[m].iter().sum();
    let low: u128 = ways[m][..=t_obs.min(max_sum)].iter().sum();
    let high: u128 = ways[m][t_obs.min(max_sum + 1)..].iter().sum();
    (low as f64 / total as f64, high as f64 / total as f64)
}

/// Two-sided Mann-Whitney-Wilcoxon test. The statistic is `U` for `a`
/// (pairs with `a > b` plus half the ties).
pub fn mann_whitney(a: &[f64], b: &[f64], method: MwMethod) -> Result<TestResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("Mann-Whitney needs two non-empty samples".into()));
    }
    let (na, nb) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let rank_sum_a: f64 = ranks[..na].iter().sum();
    let u = rank_sum_a - (na * (na + 1)) as f64 / 2.0;
    let exact = match method {
        MwMethod::Exact => true,
        MwMethod::Asymptotic => false,
        MwMethod::Auto => na * nb <= EXACT_PRODUCT_LIMIT,
    };
    let p = if exact {
        let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
        let t_obs = (rank_sum_a * 2.0).round() as usize;
        let (low, high) = exact_tails(&doubled, na, t_obs);
        (2.0 * low.min(high)).min(1.0)
    } else {
        let n = (na + nb) as f64;
        let mu = (na * nb) as f64 / 2.0;
        let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * (n - 1.0));
        let sigma = ((na * nb) as f64 / 12.0 * ((n + 1.0) - tie_term)).sqrt();
        if sigma == 0.0 {
            1.0
        } else {
            let z = ((u - mu).abs() - 0.5).max(0.0) / sigma;
            (2.0 * normal_sf(z)).min(1.0)
        }
    };
    let mut res = TestResult::plain(u, Some(p));
    res.method = Some(if exact { "exact" } else { "asymptotic" }.to_string());
    Ok(res)
}

/// Cliff's delta `(#{a > b} - #{a < b}) / (|a| |b|)` with its magnitude band.
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("Cliff's delta needs two non-empty samples".into()));
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut dominance: i64 = 0;
    for &x in a {
        let below = sorted.partition_point(|&v| v < x) as i64;
        let above = (sorted.len() - sorted.partition_point(|&v| v <= x)) as i64;
        dominance += below - above;
    }
    let delta = dominance as f64 / (a.len() * b.len()) as f64;
    let mut res = TestResult::plain(delta, None);
    res.effect_size = Some(delta);
    res.magnitude = Some(Magnitude::of_delta(delta));
    Ok(res)
}

/// Unweighted Cohen's kappa over any label type.
pub fn cohens_kappa<T: Ord>(a: &[T], b: &[T]) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "label lists differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("kappa needs at least one rated item".into()));
    }
    let n = a.len() as f64;
    let agree = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64;
    let mut margins: BTreeMap<&T, (usize, usize)> = BTreeMap::new();
    for x in a {
        margins.entry(x).or_default().0 += 1;
    }
    for y in b {
        margins.entry(y).or_default().1 += 1;
    }
    let p_o = agree / n;
    let p_e: f64 = margins.values().map(|&(ca, cb)| (ca as f64 / n) * (cb as f64 / n)).sum();
    let kappa = if p_e >= 1.0 { 1.0 } else { (p_o - p_e) / (1.0 - p_e) };
    Ok(TestResult::plain(kappa, None))
}
