use serde::{Deserialize, Serialize};

/// k-nearest neighbors over standardized rows with Euclidean distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<bool>,
}

impl Knn {
    pub fn fit(x: &[Vec<f64>], y: &[bool], k: usize) -> Self {
        Self {
            k: k.max(1),
            x: x.to_vec(),
            y: y.to_vec(),
        }
    }

    /// Training indices of the nearest neighbors, closest first. Equal
    /// distances keep training order.
    pub fn neighbors(&self, row: &[f64]) -> Vec<usize> {
        let mut d: Vec<(f64, usize)> = self
            .x
            .iter()
            .enumerate()
            .map(|(i, t)| (t.iter().zip(row).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        d.truncate(self.k.min(self.x.len()));
        d.into_iter().map(|(_, i)| i).collect()
    }

    /// Majority label among the neighbors (a tied vote takes the nearest
    /// neighbor's label) and the fraction of needs-code votes.
    pub fn vote(&self, row: &[f64]) -> (bool, f64) {
        let nb = self.neighbors(row);
        let pos = nb.iter().filter(|&&i| self.y[i]).count();
        let neg = nb.len() - pos;
        let label = match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.y[nb[0]],
        };
        (label, pos as f64 / nb.len() as f64)
    }
}
