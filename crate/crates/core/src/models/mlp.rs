use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gbstump::logistic;

/// One hidden layer of rectified units and a logistic output unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    /// hidden x input
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

/// Loss gradient with the same shape as [`Mlp`].
pub type MlpGradient = Mlp;

impl Mlp {
    /// Weights uniform in `[-0.5, 0.5] / sqrt(fan_in)`, biases zero.
    pub fn init(inputs: usize, hidden: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = 0.5 / (inputs.max(1) as f64).sqrt();
        let a2 = 0.5 / (hidden.max(1) as f64).sqrt();
        let w1 = (0..hidden)
            .map(|_| (0..inputs).map(|_| rng.gen_range(-a1..=a1)).collect())
            .collect();
        let w2 = (0..hidden).map(|_| rng.gen_range(-a2..=a2)).collect();
        Self {
            w1,
            b1: vec![0.0; hidden],
            w2,
            b2: 0.0,
        }
    }

    pub fn fit(x: &[Vec<f64>], y: &[bool], hidden: usize, learning_rate: f64, epochs: usize, seed: u64) -> Self {
        let mut m = Self::init(x[0].len(), hidden, seed);
        for _ in 0..epochs {
            let (_, g) = m.loss_and_gradient(x, y);
            m.step(&g, learning_rate);
        }
        m
    }

    fn step(&mut self, g: &MlpGradient, lr: f64) {
        for (row, grow) in self.w1.iter_mut().zip(&g.w1) {
            for (w, d) in row.iter_mut().zip(grow) {
                *w -= lr * d;
            }
        }
        for (b, d) in self.b1.iter_mut().zip(&g.b1) {
            *b -= lr * d;
        }
        for (w, d) in self.w2.iter_mut().zip(&g.w2) {
            *w -= lr * d;
        }
        self.b2 -= lr * g.b2;
    }

    fn hidden(&self, row: &[f64]) -> Vec<f64> {
        self.w1
            .iter()
            .zip(&self.b1)
            .map(|(w, b)| (w.iter().zip(row).map(|(a, v)| a * v).sum::<f64>() + b).max(0.0))
            .collect()
    }

    fn logit(&self, h: &[f64]) -> f64 {
        self.w2.iter().zip(h).map(|(w, v)| w * v).sum::<f64>() + self.b2
    }

    pub fn score(&self, row: &[f64]) -> f64 {
        logistic(self.logit(&self.hidden(row)))
    }

    /// Mean binary cross-entropy over the batch and its gradient.
    pub fn loss_and_gradient(&self, x: &[Vec<f64>], y: &[bool]) -> (f64, MlpGradient) {
        let n = x.len() as f64;
        let mut g = Mlp {
            w1: vec![vec![0.0; self.w1.first().map_or(0, Vec::len)]; self.w1.len()],
            b1: vec![0.0; self.b1.len()],
            w2: vec![0.0; self.w2.len()],
            b2: 0.0,
        };
        let mut loss = 0.0;
        for (row, &label) in x.iter().zip(y) {
            let h = self.hidden(row);
            let z = self.logit(&h);
            let t = if label { 1.0 } else { 0.0 };
            // log(1 + e^z) - t z, computed stably
            loss += z.max(0.0) + (-z.abs()).exp().ln_1p() - t * z;
            let dz = (logistic(z) - t) / n;
            g.b2 += dz;
            for j in 0..h.len() {
                g.w2[j] += dz * h[j];
                if h[j] > 0.0 {
                    let dh = dz * self.w2[j];
                    g.b1[j] += dh;
                    for (gw, v) in g.w1[j].iter_mut().zip(row) {
                        *gw += dh * v;
                    }
                }
            }
        }
        (loss / n, g)
    }
}
