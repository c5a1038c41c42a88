//! Complete-matrix reference indices.

use serde::Serialize;

use crate::matrix::PcMatrix;
use crate::priority;

use super::{BlendParams, ClassicalIndex, IndexError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalValues {
    pub ci: f64,
    pub gci: f64,
    pub k: f64,
    pub i1: f64,
    pub i2: f64,
    pub i_alpha: f64,
    pub i_alpha_beta: f64,
    pub gw: f64,
    pub ish: f64,
    pub re: f64,
}

impl ClassicalValues {
    pub fn get(&self, id: ClassicalIndex) -> f64 {
        match id {
            ClassicalIndex::Ci => self.ci,
            ClassicalIndex::Gci => self.gci,
            ClassicalIndex::K => self.k,
            ClassicalIndex::I1 => self.i1,
            ClassicalIndex::I2 => self.i2,
            ClassicalIndex::IAlpha => self.i_alpha,
            ClassicalIndex::IAlphaBeta => self.i_alpha_beta,
            ClassicalIndex::GoldenWang => self.gw,
            ClassicalIndex::SaloHamalainen => self.ish,
            ClassicalIndex::Re => self.re,
        }
    }
}

fn entry(m: &PcMatrix, i: usize, j: usize) -> f64 {
    m.get(i, j).expect("complete matrix")
}

/// All ten classical indices of a complete matrix.
pub fn classical_indices(m: &PcMatrix, p: &BlendParams) -> Result<ClassicalValues, IndexError> {
    if !m.is_complete() {
        return Err(IndexError::NotComplete);
    }
    p.validate()?;
    let n = m.size();
    let nf = n as f64;

    let lambda = priority::evm_eigen(m)?.value;
    let ci = ((lambda - nf) / (nf - 1.0)).max(0.0);

    let g = priority::gmm(m)?;
    let g = g.weights();

    let mut log_err_sq = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            log_err_sq += (entry(m, i, j) * g[j] / g[i]).ln().powi(2);
        }
    }
    let gci = 2.0 / ((nf - 1.0) * (nf - 2.0)) * log_err_sq;

    let triads = m.triads();
    let ks: Vec<f64> = triads.iter().map(|t| t.koczkodaj()).collect();
    let count = ks.len() as f64;
    let k = ks.iter().copied().fold(0.0, f64::max);
    let i1 = ks.iter().sum::<f64>() / count;
    let i2 = ks.iter().map(|x| x * x).sum::<f64>().sqrt() / count;

    let mut gw = 0.0;
    for j in 0..n {
        let col: f64 = (0..n).map(|i| entry(m, i, j)).sum();
        gw += (0..n).map(|i| (entry(m, i, j) / col - g[i]).abs()).sum::<f64>();
    }
    gw /= nf;

    let mut ish = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let products = (0..n).map(|k| entry(m, i, k) * entry(m, k, j));
            let (lo, hi) = products.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
            ish += (hi - lo) / ((1.0 + hi) * (1.0 + lo));
        }
    }
    ish *= 2.0 / (nf * (nf - 1.0));

    // Additive form: row means of ln C give the consistent approximation.
    let logs: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| entry(m, i, j).ln()).collect()).collect();
    let means: Vec<f64> = logs.iter().map(|row| row.iter().sum::<f64>() / nf).collect();
    let (mut err_sq, mut val_sq) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let e = logs[i][j] - (means[i] - means[j]);
            err_sq += e * e;
            val_sq += logs[i][j] * logs[i][j];
        }
    }
    let re = if val_sq > 0.0 { err_sq / val_sq } else { 0.0 };

    Ok(ClassicalValues {
        ci,
        gci,
        k,
        i1,
        i2,
        i_alpha: p.alpha * k + (1.0 - p.alpha) * i1,
        i_alpha_beta: p.ab_alpha * k + p.ab_beta * i1 + (1.0 - p.ab_alpha - p.ab_beta) * i2,
        gw,
        ish,
        re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{incomplete_4, small_3};

    #[test]
    fn single_triad_values() {
        let v = classical_indices(&small_3(), &BlendParams::default()).unwrap();
        assert_eq!(v.k, 0.5);
        assert!((v.i1 - 0.5).abs() < 1e-15);
        assert!((v.i2 - 0.5).abs() < 1e-15);
        assert!((v.i_alpha - 0.5).abs() < 1e-15);
        let ln2 = std::f64::consts::LN_2;
        assert!((v.gci - ln2 * ln2 / 3.0).abs() < 1e-14);
        let ish = (2.0 / 15.0 + 6.0 / 91.0 + 3.0 / 28.0) / 3.0;
        assert!((v.ish - ish).abs() < 1e-15);
        assert!((v.gw - 0.134_364_945_038_585).abs() < 1e-12);
        assert!((v.re - 0.020_369_840_204_204).abs() < 1e-12);
        assert!((v.ci - 0.026_810_787_939_487).abs() < 1e-10);
    }

    #[test]
    fn consistent_matrix_is_zero() {
        let m = PcMatrix::from_weights(&[0.4, 0.1, 0.3, 0.2]).unwrap();
        let v = classical_indices(&m, &BlendParams::default()).unwrap();
        for id in ClassicalIndex::ALL {
            assert!(v.get(id).abs() < 1e-12, "{}", id.name());
        }
    }

    #[test]
    fn incomplete_is_rejected() {
        assert_eq!(classical_indices(&incomplete_4(), &BlendParams::default()), Err(IndexError::NotComplete));
    }
}
