use serde::{Deserialize, Serialize};

/// Depth-one regression tree. `split` is `None` when no feature varies, in
/// which case every row gets `left`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stump {
    pub split: Option<(usize, f64)>,
    pub left: f64,
    pub right: f64,
}

impl Stump {
    pub fn value(&self, row: &[f64]) -> f64 {
        match self.split {
            Some((f, t)) if row[f] > t => self.right,
            _ => self.left,
        }
    }
}

/// Gradient boosting of stumps on logistic loss. Stumps are fitted to the
/// residuals by squared error; leaf values take one Newton step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientBoosting {
    pub init: f64,
    pub learning_rate: f64,
    pub stumps: Vec<Stump>,
}

pub fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn newton(r: f64, h: f64) -> f64 {
    if h.abs() < 1e-150 {
        0.0
    } else {
        r / h
    }
}

impl GradientBoosting {
    pub fn fit(x: &[Vec<f64>], y: &[bool], rounds: usize, learning_rate: f64) -> Self {
        let n = x.len();
        let d = x[0].len();
        let target: Vec<f64> = y.iter().map(|&l| if l { 1.0 } else { 0.0 }).collect();
        let p0 = target.iter().sum::<f64>() / n as f64;
        let init = (p0 / (1.0 - p0)).ln();
        let order: Vec<Vec<usize>> = (0..d)
            .map(|f| {
                let mut o: Vec<usize> = (0..n).collect();
                o.sort_by(|&a, &b| x[a][f].total_cmp(&x[b][f]).then(a.cmp(&b)));
                o
            })
            .collect();
        let mut raw = vec![init; n];
        let mut stumps = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            let prob: Vec<f64> = raw.iter().map(|&z| logistic(z)).collect();
            let resid: Vec<f64> = target.iter().zip(&prob).map(|(t, p)| t - p).collect();
            let hess: Vec<f64> = prob.iter().map(|p| p * (1.0 - p)).collect();
            let r_total: f64 = resid.iter().sum();
            let h_total: f64 = hess.iter().sum();

            let mut best: Option<(f64, usize, usize)> = None;
            for (f, o) in order.iter().enumerate() {
                let mut r_left = 0.0;
                for k in 1..n {
                    r_left += resid[o[k - 1]];
                    if x[o[k - 1]][f] == x[o[k]][f] {
                        continue;
                    }
                    let r_right = r_total - r_left;
                    let gain = r_left * r_left / k as f64 + r_right * r_right / (n - k) as f64;
                    if best.is_none_or(|(g, _, _)| gain > g) {
                        best = Some((gain, f, k));
                    }
                }
            }
            let stump = match best {
                None => Stump {
                    split: None,
                    left: newton(r_total, h_total),
                    right: newton(r_total, h_total),
                },
                Some((_, f, k)) => {
                    let o = &order[f];
                    let (rl, hl) = o[..k].iter().fold((0.0, 0.0), |(r, h), &i| (r + resid[i], h + hess[i]));
                    Stump {
                        split: Some((f, (x[o[k - 1]][f] + x[o[k]][f]) / 2.0)),
                        left: newton(rl, hl),
                        right: newton(r_total - rl, h_total - hl),
                    }
                }
            };
            for (z, row) in raw.iter_mut().zip(x) {
                *z += learning_rate * stump.value(row);
            }
            stumps.push(stump);
        }
        Self {
            init,
            learning_rate,
            stumps,
        }
    }

    pub fn decision(&self, row: &[f64]) -> f64 {
        self.init + self.stumps.iter().map(|s| self.learning_rate * s.value(row)).sum::<f64>()
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        logistic(self.decision(row))
    }
}
