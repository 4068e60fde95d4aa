use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-column z-scoring with population standard deviation.
///
/// A column whose training values are all equal has `std == 0` and maps to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &[Vec<f64>]) -> Result<Self> {
        let first = x
            .first()
            .ok_or_else(|| Error::InvalidInput("cannot standardize an empty matrix".into()))?;
        let d = first.len();
        check_width(x, d)?;
        let n = x.len() as f64;
        let mut mean = vec![0.0; d];
        let mut std = vec![0.0; d];
        for j in 0..d {
            if x.iter().all(|row| row[j] == first[j]) {
                mean[j] = first[j];
                continue;
            }
            let m = x.iter().map(|row| row[j]).sum::<f64>() / n;
            let var = x.iter().map(|row| (row[j] - m).powi(2)).sum::<f64>() / n;
            mean[j] = m;
            std[j] = var.sqrt();
        }
        Ok(Self { mean, std })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn is_constant(&self, column: usize) -> bool {
        self.std[column] == 0.0
    }

    pub fn apply_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(j, &v)| if self.std[j] == 0.0 { 0.0 } else { (v - self.mean[j]) / self.std[j] })
            .collect()
    }

    pub fn apply(&self, x: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        check_width(x, self.dim())?;
        Ok(x.iter().map(|r| self.apply_row(r)).collect())
    }
}

pub(crate) fn check_width(x: &[Vec<f64>], d: usize) -> Result<()> {
    match x.iter().find(|r| r.len() != d) {
        Some(r) => Err(Error::DimensionMismatch {
            expected: d,
            found: r.len(),
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_std_convention() {
        let x = vec![vec![1.0, 5.0], vec![2.0, 5.0], vec![3.0, 5.0]];
        let s = Standardizer::fit(&x).unwrap();
        assert_eq!(s.mean, vec![2.0, 5.0]);
        assert!((s.std[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(s.is_constant(1));
        let z = s.apply(&x).unwrap();
        let col: Vec<f64> = z.iter().map(|r| r[0]).collect();
        for (a, b) in col.iter().zip([-1.2247, 0.0, 1.2247]) {
            assert!((a - b).abs() < 1e-4);
        }
        assert!(z.iter().all(|r| r[1] == 0.0));
    }

    #[test]
    fn refit_on_transformed_is_identity() {
        let x: Vec<Vec<f64>> = (0..50)
            .map(|i| vec![i as f64 * 0.37, ((i * 7) % 11) as f64, 0.1])
            .collect();
        let s = Standardizer::fit(&x).unwrap();
        let again = Standardizer::fit(&s.apply(&x).unwrap()).unwrap();
        for j in 0..2 {
            assert!(again.mean[j].abs() < 1e-12);
            assert!((again.std[j] - 1.0).abs() < 1e-12);
        }
        assert!(again.is_constant(2));
    }

    #[test]
    fn empty_and_ragged_rejected() {
        assert!(Standardizer::fit(&[]).is_err());
        assert!(matches!(
            Standardizer::fit(&[vec![1.0], vec![1.0, 2.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
