//! Ranking-based indices. Each compares the defined judgments with the ratios
//! of the ILLS priority vector; missing judgments are treated as perfectly
//! consistent and contribute nothing to the residuals.

use nalgebra::DMatrix;

use crate::graph::ComparisonGraph;
use crate::matrix::PcMatrix;
use crate::priority::{self, principal_eigen};

use super::IndexError;

/// Normalization choice for the two-variant indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    V1,
    V2,
}

/// Log-residuals `ln(c_ij w_j / w_i)` of one matrix against one weight vector.
pub(crate) struct Residuals {
    n: usize,
    /// `ln^2 e_ij` over defined pairs `i < j`.
    upper_sq: Vec<f64>,
    /// `sum of ln^2 c_ij` over defined ordered pairs `i != j`.
    defined_log_sq: f64,
    /// `sum of ln^2(w_i / w_j)` over missing ordered pairs.
    missing_log_sq: f64,
}

impl Residuals {
    pub(crate) fn new(m: &PcMatrix, w: &[f64]) -> Self {
        let n = m.size();
        let mut upper_sq = Vec::new();
        let (mut defined_log_sq, mut missing_log_sq) = (0.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                match m.get(i, j) {
                    Some(c) => {
                        let e = c.ln() - w[i].ln() + w[j].ln();
                        upper_sq.push(e * e);
                        defined_log_sq += 2.0 * c.ln().powi(2);
                    }
                    None => missing_log_sq += 2.0 * (w[i] / w[j]).ln().powi(2),
                }
            }
        }
        Self { n, upper_sq, defined_log_sq, missing_log_sq }
    }

    fn upper_sum(&self) -> f64 {
        self.upper_sq.iter().sum()
    }

    pub(crate) fn gci(&self, variant: Variant) -> f64 {
        let n = self.n as f64;
        match variant {
            Variant::V1 => 2.0 / ((n - 1.0) * (n - 2.0)) * self.upper_sum(),
            Variant::V2 => self.upper_sum() / self.upper_sq.len() as f64,
        }
    }

    /// LLS criterion over both orientations of every defined pair.
    pub(crate) fn lls(&self) -> f64 {
        2.0 * self.upper_sum()
    }

    pub(crate) fn relative_error(&self, variant: Variant) -> Result<f64, IndexError> {
        let num = self.lls();
        let den = match variant {
            Variant::V1 => self.defined_log_sq + self.missing_log_sq,
            Variant::V2 => self.defined_log_sq,
        };
        if den > 0.0 {
            Ok(num / den)
        } else if num <= f64::EPSILON {
            Ok(0.0)
        } else {
            Err(IndexError::DegenerateDenominator)
        }
    }
}

fn ills_weights(m: &PcMatrix) -> Result<Vec<f64>, IndexError> {
    Ok(priority::ills(m)?.into_inner())
}

/// Geometric consistency index with ILLS weights: `V1` keeps the complete
/// normalization `2 / ((n-1)(n-2))`, `V2` averages over defined comparisons.
pub fn gci_inc(m: &PcMatrix, variant: Variant) -> Result<f64, IndexError> {
    let w = ills_weights(m)?;
    Ok(Residuals::new(m, &w).gci(variant))
}

/// Golden-Wang with `w` as the reference weights; columns of `C` and of the
/// masked weight matrix are scaled over their defined cells, diagonal
/// included.
pub(crate) fn gw_with(m: &PcMatrix, w: &[f64]) -> f64 {
    let n = m.size();
    let mut total = 0.0;
    for j in 0..n {
        let (mut col_sum, mut w_sum) = (0.0, 0.0);
        for i in 0..n {
            if let Some(c) = m.get(i, j) {
                col_sum += c;
                w_sum += w[i];
            }
        }
        for i in 0..n {
            if let Some(c) = m.get(i, j) {
                total += (c / col_sum - w[i] / w_sum).abs();
            }
        }
    }
    total / n as f64
}

pub fn gw_inc(m: &PcMatrix) -> Result<f64, IndexError> {
    let w = ills_weights(m)?;
    Ok(gw_with(m, &w))
}

/// Relative error with ILLS weights. `V1` keeps the missing cells' fitted
/// ratios in the denominator, `V2` skips them.
pub fn re_inc(m: &PcMatrix, variant: Variant) -> Result<f64, IndexError> {
    let w = ills_weights(m)?;
    Residuals::new(m, &w).relative_error(variant)
}

pub(crate) fn ci_from_lambda(lambda: f64, n: usize) -> f64 {
    // lambda >= n holds exactly; clamp rounding noise below it.
    ((lambda - n as f64) / (n as f64 - 1.0)).max(0.0)
}

/// Harker's consistency index `(lambda_max(B) - n) / (n - 1)`.
pub fn harker_ci(m: &PcMatrix) -> Result<f64, IndexError> {
    let e = priority::harker_rank(m)?;
    Ok(ci_from_lambda(e.value, m.size()))
}

/// LLS criterion of the optimal completion under ILLS weights.
pub fn lls_index(m: &PcMatrix) -> Result<f64, IndexError> {
    let w = ills_weights(m)?;
    Ok(Residuals::new(m, &w).lls())
}

/// `rho(D^-1 S) - 1` with missing cells set to zero and `S = R - I`.
pub fn oliva_index(m: &PcMatrix) -> Result<f64, IndexError> {
    let g = ComparisonGraph::new(m);
    if !g.is_irreducible() {
        return Err(IndexError::NotIrreducible);
    }
    let n = m.size();
    let a = DMatrix::from_fn(n, n, |i, j| match (i == j, m.get(i, j)) {
        (true, _) | (_, None) => 0.0,
        (false, Some(c)) => c / g.degree(i) as f64,
    });
    let rho = principal_eigen(&a)?.value;
    Ok((rho - 1.0).max(0.0))
}
