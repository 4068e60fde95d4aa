use serde::{Deserialize, Serialize};

use super::label::LabeledQuestion;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Split {
    pub train: Vec<LabeledQuestion>,
    pub test: Vec<LabeledQuestion>,
}

/// Question ids per partition, as written next to trained models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitManifest {
    pub train_fraction: f64,
    pub train_needs_code: Vec<u64>,
    pub train_no_code: Vec<u64>,
    pub test_needs_code: Vec<u64>,
    pub test_no_code: Vec<u64>,
}

/// Number of training items taken from a class of size `n`.
///
/// Rounded to the nearest integer and clamped so both partitions keep at
/// least one item (1,207 at 0.7 gives 845).
pub fn train_count(n: usize, train_fraction: f64) -> usize {
    let raw = (n as f64 * train_fraction).round() as usize;
    raw.clamp(1, n.saturating_sub(1).max(1))
}

/// Per-class chronological split: within each class the oldest questions go
/// to training. Equal timestamps are ordered by id.
pub fn chronological_split(labeled: &[LabeledQuestion], train_fraction: f64) -> Result<Split> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidInput(format!(
            "train_fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (needs_code, class) in [(true, "needs-code"), (false, "no-code")] {
        let mut members: Vec<&LabeledQuestion> = labeled
            .iter()
            .filter(|q| q.label.needs_code == needs_code)
            .collect();
        if members.len() < 2 {
            return Err(Error::ClassTooSmall {
                class,
                count: members.len(),
                required: 2,
            });
        }
        members.sort_by_key(|q| (q.record.creation_utc, q.record.id));
        let k = train_count(members.len(), train_fraction);
        train.extend(members[..k].iter().map(|q| (*q).clone()));
        test.extend(members[k..].iter().map(|q| (*q).clone()));
    }
    Ok(Split { train, test })
}

impl Split {
    pub fn manifest(&self, train_fraction: f64) -> SplitManifest {
        let ids = |part: &[LabeledQuestion], needs: bool| -> Vec<u64> {
            part.iter()
                .filter(|q| q.label.needs_code == needs)
                .map(|q| q.record.id)
                .collect()
        };
        SplitManifest {
            train_fraction,
            train_needs_code: ids(&self.train, true),
            train_no_code: ids(&self.train, false),
            test_needs_code: ids(&self.test, true),
            test_no_code: ids(&self.test, false),
        }
    }
}
