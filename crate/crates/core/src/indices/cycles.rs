//! Matrix-based indices: cycle generalizations of the triad indices and the
//! path-product Salo-Hamalainen index.

use std::ops::ControlFlow;

use crate::graph::{koczkodaj_ratio, ComparisonGraph, EnumerationCap, GraphError};
use crate::matrix::PcMatrix;

use super::{BlendParams, IndexError};

/// `(K~, I~1, I~2)` over all simple cycles of length at least three.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CycleIndices {
    pub k: f64,
    pub i1: f64,
    pub i2: f64,
    /// Number of canonical cycles the values were computed from.
    pub cycles: usize,
}

/// `(I~alpha, I~alpha,beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blends {
    pub alpha: f64,
    pub alpha_beta: f64,
}

pub(crate) fn cycle_indices_on(g: &ComparisonGraph, cap: EnumerationCap) -> Result<CycleIndices, IndexError> {
    let limit = cap.resolve(g.vertex_count());
    let (mut count, mut max, mut sum, mut sum_sq) = (0usize, 0.0f64, 0.0f64, 0.0f64);
    let over = g.visit_cycles(3, |_, ratio| {
        if limit.is_some_and(|l| count >= l) {
            return ControlFlow::Break(());
        }
        let k = koczkodaj_ratio(ratio);
        count += 1;
        max = max.max(k);
        sum += k;
        sum_sq += k * k;
        ControlFlow::Continue(())
    });
    if over.is_some() {
        return Err(IndexError::CycleCapExceeded(limit.unwrap_or(usize::MAX)));
    }
    if count == 0 {
        return Ok(CycleIndices::default());
    }
    let c = count as f64;
    Ok(CycleIndices { k: max, i1: sum / c, i2: sum_sq.sqrt() / c, cycles: count })
}

/// `K~ = max K_s`, `I~1 = sum K_s / |S|`, `I~2 = sqrt(sum K_s^2) / |S|`;
/// all zero when the comparison graph is a tree.
pub fn cycle_based_indices(m: &PcMatrix) -> Result<CycleIndices, IndexError> {
    let g = ComparisonGraph::new(m);
    if !g.is_irreducible() {
        return Err(IndexError::NotIrreducible);
    }
    cycle_indices_on(&g, EnumerationCap::Auto)
}

pub fn blend_indices(c: &CycleIndices, p: &BlendParams) -> Result<Blends, IndexError> {
    p.validate()?;
    Ok(Blends {
        alpha: p.alpha * c.k + (1.0 - p.alpha) * c.i1,
        alpha_beta: p.ab_alpha * c.k + p.ab_beta * c.i1 + (1.0 - p.ab_alpha - p.ab_beta) * c.i2,
    })
}

// One depth-first search per source collects the extreme path products to
// every reachable target, since each search node is a simple path from the
// source.
pub(crate) fn sh_on(g: &ComparisonGraph, cap: EnumerationCap) -> Result<f64, IndexError> {
    let n = g.vertex_count();
    let limit = cap.resolve(n);
    let mut total = 0.0;
    let mut visited = 0usize;
    for i in 0..n {
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![0.0f64; n];
        let over = g.visit_paths_from(i, |path, product| {
            if limit.is_some_and(|l| visited >= l) {
                return ControlFlow::Break(());
            }
            visited += 1;
            let j = *path.last().expect("non-empty");
            lo[j] = lo[j].min(product);
            hi[j] = hi[j].max(product);
            ControlFlow::Continue(())
        });
        if over.is_some() {
            return Err(GraphError::CapExceeded(limit.unwrap_or(usize::MAX)).into());
        }
        for j in (i + 1)..n {
            if hi[j] == 0.0 {
                return Err(IndexError::NotIrreducible);
            }
            total += (hi[j] - lo[j]) / ((1.0 + hi[j]) * (1.0 + lo[j]));
        }
    }
    Ok(2.0 * total / (n * (n - 1)) as f64)
}

/// Salo-Hamalainen index with path products in place of the `c_ik c_kj`
/// approximations.
pub fn sh_index_inc(m: &PcMatrix) -> Result<f64, IndexError> {
    let g = ComparisonGraph::new(m);
    if !g.is_irreducible() {
        return Err(IndexError::NotIrreducible);
    }
    sh_on(&g, EnumerationCap::Auto)
}
