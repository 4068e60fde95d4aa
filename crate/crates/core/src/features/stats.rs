use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Per-class occurrence counts of one term and its selection statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermStat {
    pub term: String,
    /// occurrences in needs-code training questions
    pub f_c: u64,
    /// occurrences in no-code training questions
    pub f_nc: u64,
    /// frequency difference `|f_c - f_nc|`
    pub d: u64,
    /// frequency ratio in percent, `100 * min / max`
    pub r: f64,
}

impl TermStat {
    pub fn new(term: impl Into<String>, f_c: u64, f_nc: u64) -> Self {
        let (d, r) = diff_ratio(f_c, f_nc);
        Self {
            term: term.into(),
            f_c,
            f_nc,
            d,
            r,
        }
    }

    pub fn passes(&self, d_min: u64, r_max: f64) -> bool {
        self.d >= d_min && self.r <= r_max
    }
}

/// Frequency difference and ratio (percent) between the two class counts.
///
/// When both counts are zero the ratio is defined as 100, which never passes
/// a selection threshold below 100.
pub fn diff_ratio(f_c: u64, f_nc: u64) -> (u64, f64) {
    if f_c >= f_nc {
        let r = if f_c == 0 {
            100.0
        } else {
            f_nc as f64 / f_c as f64 * 100.0
        };
        (f_c - f_nc, r)
    } else {
        (f_nc - f_c, f_c as f64 / f_nc as f64 * 100.0)
    }
}

/// Selection thresholds. Defaults: keywords and body patterns need d >= 50,
/// title patterns d >= 20, all need r <= 50%.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    pub keyword_d_min: u64,
    pub body_d_min: u64,
    pub title_d_min: u64,
    pub r_max: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            keyword_d_min: 50,
            body_d_min: 50,
            title_d_min: 20,
            r_max: 50.0,
        }
    }
}

/// Two-class term counter with a sorted key space.
#[derive(Debug, Default, Clone)]
pub struct ClassCounts {
    counts: BTreeMap<String, (u64, u64)>,
}

impl ClassCounts {
    pub fn add(&mut self, term: &str, needs_code: bool, n: u64) {
        let entry = self.counts.entry(term.to_string()).or_default();
        if needs_code {
            entry.0 += n;
        } else {
            entry.1 += n;
        }
    }

    pub fn merge(mut self, other: ClassCounts) -> ClassCounts {
        for (term, (c, nc)) in other.counts {
            let entry = self.counts.entry(term).or_default();
            entry.0 += c;
            entry.1 += nc;
        }
        self
    }

    pub fn stats(&self) -> impl Iterator<Item = TermStat> + '_ {
        self.counts
            .iter()
            .map(|(term, &(c, nc))| TermStat::new(term.clone(), c, nc))
    }

    /// Terms passing both thresholds, in sorted term order.
    pub fn select(&self, d_min: u64, r_max: f64) -> Vec<TermStat> {
        self.stats().filter(|s| s.passes(d_min, r_max)).collect()
    }

    pub fn get(&self, term: &str) -> (u64, u64) {
        self.counts.get(term).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}
