use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary confusion counts with needs-code as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl Confusion {
    pub fn from_labels(y_true: &[bool], y_pred: &[bool]) -> Self {
        let mut c = Confusion::default();
        for (&t, &p) in y_true.iter().zip(y_pred) {
            match (t, p) {
                (true, true) => c.tp += 1,
                (false, true) => c.fp += 1,
                (true, false) => c.fn_ += 1,
                (false, false) => c.tn += 1,
            }
        }
        c
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
    /// No predictions of this class, so precision is reported as 0.
    pub precision_undefined: bool,
    /// No true members of this class, so recall is reported as 0.
    pub recall_undefined: bool,
}

fn ratio(num: u64, den: u64) -> (f64, bool) {
    if den == 0 {
        (0.0, true)
    } else {
        (num as f64 / den as f64, false)
    }
}

impl ClassMetrics {
    fn new(hit: u64, false_alarm: u64, miss: u64) -> Self {
        let (precision, precision_undefined) = ratio(hit, hit + false_alarm);
        let (recall, recall_undefined) = ratio(hit, hit + miss);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            precision,
            recall,
            f1,
            support: hit + miss,
            precision_undefined,
            recall_undefined,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub needs_code: ClassMetrics,
    pub no_code: ClassMetrics,
    pub accuracy: f64,
    pub confusion: Confusion,
}

impl MetricsReport {
    pub fn from_confusion(c: Confusion) -> Self {
        Self {
            needs_code: ClassMetrics::new(c.tp, c.fp, c.fn_),
            no_code: ClassMetrics::new(c.tn, c.fn_, c.fp),
            accuracy: ratio(c.tp + c.tn, c.total()).0,
            confusion: c,
        }
    }
}

pub fn classification_metrics(y_true: &[bool], y_pred: &[bool]) -> Result<MetricsReport> {
    if y_true.len() != y_pred.len() {
        return Err(Error::InvalidInput(format!(
            "{} true labels but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    if y_true.is_empty() {
        return Err(Error::InvalidInput("no labels to evaluate".into()));
    }
    Ok(MetricsReport::from_confusion(Confusion::from_labels(y_true, y_pred)))
}

/// One block per model, a row per class: precision, recall, F1, accuracy.
pub fn render_metrics_table(rows: &[(String, MetricsReport)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:<11} {:>9} {:>7} {:>7} {:>9}",
        "Model", "Class", "Precision", "Recall", "F1", "Accuracy"
    );
    for (name, m) in rows {
        for (class, c) in [("needs-code", &m.needs_code), ("no-code", &m.no_code)] {
            let _ = writeln!(
                out,
                "{:<10} {:<11} {:>9.3} {:>7.3} {:>7.3} {:>9.3}",
                name, class, c.precision, c.recall, c.f1, m.accuracy
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_confusion() {
        let m = MetricsReport::from_confusion(Confusion {
            tp: 9,
            fp: 1,
            fn_: 3,
            tn: 7,
        });
        assert!((m.needs_code.precision - 0.9).abs() < 1e-12);
        assert!((m.needs_code.recall - 0.75).abs() < 1e-12);
        assert!((m.needs_code.f1 - 0.818).abs() < 1e-3);
        assert!((m.accuracy - 0.8).abs() < 1e-12);
        assert!((m.no_code.precision - 0.7).abs() < 1e-12);
        assert!((m.no_code.recall - 7.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_and_degenerate() {
        let y = [true, false, true, false];
        let m = classification_metrics(&y, &y).unwrap();
        for c in [m.needs_code, m.no_code] {
            assert_eq!((c.precision, c.recall, c.f1), (1.0, 1.0, 1.0));
        }
        assert_eq!(m.accuracy, 1.0);
        let m = classification_metrics(&y, &[true; 4]).unwrap();
        assert!(m.no_code.precision_undefined);
        assert_eq!(m.no_code.f1, 0.0);
        assert!(classification_metrics(&y, &y[..3]).is_err());
    }

    #[test]
    fn json_uses_fn_key() {
        let s = serde_json::to_string(&Confusion::default()).unwrap();
        assert_eq!(s, r#"{"tp":0,"fp":0,"fn":0,"tn":0}"#);
    }
}
