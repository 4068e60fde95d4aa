use serde::{Deserialize, Serialize};

/// Gaussian naive Bayes with empirical class priors. Index 0 is the
/// no-code class, index 1 needs-code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    pub class_log_prior: [f64; 2],
    pub mean: [Vec<f64>; 2],
    pub var: [Vec<f64>; 2],
    /// Variance floor added to every class variance.
    pub epsilon: f64,
}

fn column_var(rows: &[&Vec<f64>], j: usize) -> (f64, f64) {
    let n = rows.len() as f64;
    let m = rows.iter().map(|r| r[j]).sum::<f64>() / n;
    let v = rows.iter().map(|r| (r[j] - m).powi(2)).sum::<f64>() / n;
    (m, v)
}

impl GaussianNb {
    /// The floor is `var_smoothing` times the largest per-feature variance
    /// of the whole training set (or `var_smoothing` itself if every
    /// feature is constant).
    pub fn fit(x: &[Vec<f64>], y: &[bool], var_smoothing: f64) -> Self {
        let d = x[0].len();
        let all: Vec<&Vec<f64>> = x.iter().collect();
        let max_var = (0..d).map(|j| column_var(&all, j).1).fold(0.0, f64::max);
        let epsilon = if max_var > 0.0 { var_smoothing * max_var } else { var_smoothing };
        let n = x.len() as f64;
        let mut class_log_prior = [0.0; 2];
        let mut mean = [Vec::new(), Vec::new()];
        let mut var = [Vec::new(), Vec::new()];
        for c in 0..2 {
            let rows: Vec<&Vec<f64>> = x.iter().zip(y).filter(|(_, &l)| l == (c == 1)).map(|(r, _)| r).collect();
            class_log_prior[c] = (rows.len() as f64 / n).ln();
            for j in 0..d {
                let (m, v) = column_var(&rows, j);
                mean[c].push(m);
                var[c].push(v + epsilon);
            }
        }
        Self {
            class_log_prior,
            mean,
            var,
            epsilon,
        }
    }

    /// Unnormalized log posterior `log P(c) + log p(x | c)` for both classes.
    pub fn joint_log_likelihood(&self, row: &[f64]) -> [f64; 2] {
        let mut out = self.class_log_prior;
        for (c, o) in out.iter_mut().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let var = self.var[c][j];
                *o -= 0.5 * (2.0 * std::f64::consts::PI * var).ln();
                *o -= 0.5 * (v - self.mean[c][j]).powi(2) / var;
            }
        }
        out
    }

    /// Normalized log posteriors `[log P(no-code | x), log P(needs-code | x)]`.
    pub fn log_posterior(&self, row: &[f64]) -> [f64; 2] {
        let [a, b] = self.joint_log_likelihood(row);
        let m = a.max(b);
        let lse = m + ((a - m).exp() + (b - m).exp()).ln();
        [a - lse, b - lse]
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        let [a, b] = self.joint_log_likelihood(row);
        1.0 / (1.0 + (a - b).exp())
    }
}
