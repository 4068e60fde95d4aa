use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Linear SVM trained with the Pegasos stochastic subgradient method.
///
/// The bias is an extra weight on a constant input of 1 and is regularized
/// with the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    pub weights: Vec<f64>,
    pub bias: f64,
}

fn sign(y: bool) -> f64 {
    if y {
        1.0
    } else {
        -1.0
    }
}

impl LinearSvm {
    pub fn fit(x: &[Vec<f64>], y: &[bool], lambda: f64, epochs: usize, seed: u64) -> Self {
        Self::fit_observed(x, y, lambda, epochs, seed, |_, _| {})
    }

    /// Same as [`LinearSvm::fit`], calling `observe(epoch, model)` after
    /// every update step.
    pub fn fit_observed<F>(
        x: &[Vec<f64>],
        y: &[bool],
        lambda: f64,
        epochs: usize,
        seed: u64,
        mut observe: F,
    ) -> Self
    where
        F: FnMut(usize, &LinearSvm),
    {
        let d = x[0].len();
        let mut m = LinearSvm {
            weights: vec![0.0; d],
            bias: 0.0,
        };
        let radius = 1.0 / lambda.sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..x.len()).collect();
        let mut t = 0u64;
        for epoch in 0..epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                t += 1;
                let eta = 1.0 / (lambda * t as f64);
                let yi = sign(y[i]);
                let margin = yi * m.margin(&x[i]);
                let shrink = 1.0 - eta * lambda;
                m.weights.iter_mut().for_each(|w| *w *= shrink);
                m.bias *= shrink;
                if margin < 1.0 {
                    for (w, v) in m.weights.iter_mut().zip(&x[i]) {
                        *w += eta * yi * v;
                    }
                    m.bias += eta * yi;
                }
                let norm = (m.weights.iter().map(|w| w * w).sum::<f64>() + m.bias * m.bias).sqrt();
                if norm > radius {
                    let s = radius / norm;
                    m.weights.iter_mut().for_each(|w| *w *= s);
                    m.bias *= s;
                }
                observe(epoch, &m);
            }
        }
        m
    }

    pub fn margin(&self, row: &[f64]) -> f64 {
        self.weights.iter().zip(row).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    /// Regularized hinge objective `lambda/2 |w|^2 + mean hinge`.
    pub fn objective(&self, x: &[Vec<f64>], y: &[bool], lambda: f64) -> f64 {
        let norm2 = self.weights.iter().map(|w| w * w).sum::<f64>() + self.bias * self.bias;
        let hinge = x
            .iter()
            .zip(y)
            .map(|(r, &l)| (1.0 - sign(l) * self.margin(r)).max(0.0))
            .sum::<f64>()
            / x.len() as f64;
        lambda / 2.0 * norm2 + hinge
    }
}
