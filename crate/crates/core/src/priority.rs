//! Priority vectors: EVM and GMM for complete matrices, Harker's eigenvector
//! method and incomplete logarithmic least squares (ILLS) for incomplete ones.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::graph::ComparisonGraph;
use crate::matrix::PcMatrix;

/// Stop when the largest change of the normalized iterate, relative to its
/// largest entry, drops to this value.
pub const EIGEN_TOL: f64 = 1e-13;
pub const EIGEN_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PriorityError {
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("method requires a complete matrix")]
    NotComplete,
    #[error("power iteration did not converge after {0} iterations")]
    NotConverged(usize),
    #[error("input matrix is reducible, negative or not square")]
    ReducibleInput,
    #[error("linear system is singular")]
    SingularSystem,
}

/// Positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorityVector(Vec<f64>);

impl PriorityVector {
    /// Normalizes positive weights to unit sum.
    pub fn from_unnormalized(mut w: Vec<f64>) -> Self {
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
        Self(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `w_i / w_j`.
    pub fn ratio(&self, i: usize, j: usize) -> f64 {
        self.0[i] / self.0[j]
    }
}

impl std::ops::Index<usize> for PriorityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Principal (Perron) eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub value: f64,
    pub vector: PriorityVector,
}

fn strongly_connected(a: &DMatrix<f64>) -> bool {
    let n = a.nrows();
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                let w = if forward { a[(v, u)] } else { a[(u, v)] };
                if w > 0.0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    n > 0 && reach(true) && reach(false)
}

/// Perron eigenpair of a nonnegative irreducible matrix.
///
/// Iterates on `A + I`, which is primitive whenever `A` is irreducible, so the
/// iteration converges even for periodic `A`. The reported eigenvalue is that
/// of `A`.
pub fn principal_eigen(a: &DMatrix<f64>) -> Result<EigenResult, PriorityError> {
    let n = a.nrows();
    if n != a.ncols() || a.iter().any(|&x| !(x >= 0.0 && x.is_finite())) || !strongly_connected(a) {
        return Err(PriorityError::ReducibleInput);
    }
    let shifted = a + DMatrix::<f64>::identity(n, n);
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    for _ in 0..EIGEN_MAX_ITER {
        let y = &shifted * &x;
        let growth = y.sum();
        let y = y / growth;
        let change = (&y - &x).amax() / y.amax();
        x = y;
        if change <= EIGEN_TOL {
            // x sums to one, so the Rayleigh-style estimate is sum(Bx).
            let value = (&shifted * &x).sum() - 1.0;
            return Ok(EigenResult { value, vector: PriorityVector(x.iter().copied().collect()) });
        }
    }
    Err(PriorityError::NotConverged(EIGEN_MAX_ITER))
}

fn dense(m: &PcMatrix, missing: f64) -> DMatrix<f64> {
    let n = m.size();
    DMatrix::from_fn(n, n, |i, j| m.get(i, j).unwrap_or(missing))
}

/// Eigenvector method on a complete matrix; returns the full eigenpair.
pub fn evm_eigen(m: &PcMatrix) -> Result<EigenResult, PriorityError> {
    if !m.is_complete() {
        return Err(PriorityError::NotComplete);
    }
    principal_eigen(&dense(m, 0.0))
}

pub fn evm(m: &PcMatrix) -> Result<PriorityVector, PriorityError> {
    evm_eigen(m).map(|e| e.vector)
}

/// Row geometric means, normalized.
pub fn gmm(m: &PcMatrix) -> Result<PriorityVector, PriorityError> {
    if !m.is_complete() {
        return Err(PriorityError::NotComplete);
    }
    let n = m.size();
    let w = (0..n)
        .map(|i| {
            let log_sum: f64 = (0..n).map(|j| m.get(i, j).expect("complete").ln()).sum();
            (log_sum / n as f64).exp()
        })
        .collect();
    Ok(PriorityVector::from_unnormalized(w))
}

/// Harker's auxiliary matrix: missing cells become 0 and each diagonal entry
/// becomes `1 + (missing cells in the row)`.
pub fn harker_matrix(m: &PcMatrix) -> DMatrix<f64> {
    let mut b = dense(m, 0.0);
    for i in 0..m.size() {
        b[(i, i)] = 1.0 + m.missing_in_row(i) as f64;
    }
    b
}

/// Harker's eigenvector method. Equals [`evm_eigen`] on complete input.
pub fn harker_rank(m: &PcMatrix) -> Result<EigenResult, PriorityError> {
    if !ComparisonGraph::new(m).is_irreducible() {
        return Err(PriorityError::NotIrreducible);
    }
    principal_eigen(&harker_matrix(m))
}

/// Diagonal used in the ILLS Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaplacianDiagonal {
    /// Number of defined comparisons in the row (the normal equations of the
    /// least-squares problem).
    #[default]
    Degree,
    /// Number of missing comparisons in the row. Kept only for auditing the
    /// alternative reading of the Laplacian; it is not a least-squares
    /// solution in general.
    MissingCount,
}

/// Incomplete logarithmic least squares.
///
/// Minimizes `sum over defined i != j of (ln c_ij - x_i + x_j)^2` in the
/// log-weights `x` by solving the graph-Laplacian normal equations with
/// `x_0 = 0`, then returns `exp(x)` normalized.
pub fn ills(m: &PcMatrix) -> Result<PriorityVector, PriorityError> {
    ills_with(m, LaplacianDiagonal::Degree)
}

pub fn ills_with(m: &PcMatrix, diagonal: LaplacianDiagonal) -> Result<PriorityVector, PriorityError> {
    let g = ComparisonGraph::new(m);
    if !g.is_irreducible() {
        return Err(PriorityError::NotIrreducible);
    }
    let n = m.size();
    // Anchor x_0 = 0 by dropping the first row and column.
    let k = n - 1;
    let mut lap = DMatrix::<f64>::zeros(k, k);
    let mut rhs = DVector::<f64>::zeros(k);
    for i in 1..n {
        lap[(i - 1, i - 1)] = match diagonal {
            LaplacianDiagonal::Degree => g.degree(i) as f64,
            LaplacianDiagonal::MissingCount => m.missing_in_row(i) as f64,
        };
        for &j in g.neighbors(i) {
            rhs[i - 1] += g.label(i, j).ln();
            if j > 0 {
                lap[(i - 1, j - 1)] = -1.0;
            }
        }
    }
    let lu = lap.lu();
    if !lu.is_invertible() {
        return Err(PriorityError::SingularSystem);
    }
    let x = lu.solve(&rhs).ok_or(PriorityError::SingularSystem)?;
    let mut w = Vec::with_capacity(n);
    w.push(1.0);
    w.extend(x.iter().map(|v| v.exp()));
    if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(PriorityError::SingularSystem);
    }
    Ok(PriorityVector::from_unnormalized(w))
}

/// `sum over defined i != j of (ln c_ij - ln w_i + ln w_j)^2`.
pub fn lls_criterion(m: &PcMatrix, w: &[f64]) -> f64 {
    let n = m.size();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(c) = m.get(i, j) {
                let r = c.ln() - w[i].ln() + w[j].ln();
                s += r * r;
            }
        }
    }
    s
}

/// Ranking methods exposed through the CLI and FFI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Evm,
    Gmm,
    Harker,
    Ills,
}

impl Method {
    pub fn rank(self, m: &PcMatrix) -> Result<PriorityVector, PriorityError> {
        match self {
            Self::Evm => evm(m),
            Self::Gmm => gmm(m),
            Self::Harker => harker_rank(m).map(|e| e.vector),
            Self::Ills => ills(m),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "evm" => Ok(Self::Evm),
            "gmm" => Ok(Self::Gmm),
            "harker" => Ok(Self::Harker),
            "ills" => Ok(Self::Ills),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}
