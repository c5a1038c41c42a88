//! Robustness experiment: how far each index moves when comparisons are
//! deleted from a complete matrix.
//!
//! For every base matrix a consistent matrix is generated, disturbed at each
//! level `d = 1..=d_max`, and thinned one comparison at a time (keeping the
//! comparison graph connected) down to a spanning tree. For each index `I` the
//! rescaled ordered distance `(I(C) - I(C_k)) / max(I(C), I(C_k))` is averaged
//! over all disturbed matrices to give `D(I, k)`, and `sum_k |D(I, k)|` is the
//! index's total distance.
//!
//! Each base matrix draws from its own ChaCha stream keyed by `(seed, ordinal)`
//! and partial sums are reduced in ordinal order, so results are bit-identical
//! for any thread count.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::ComparisonGraph;
use crate::indices::{evaluate, BlendParams, Evaluator, IndexError, IndexId, IndexValues};
use crate::matrix::PcMatrix;

/// Index values at or below this magnitude count as exactly zero when
/// computing rescaled distances; consistent matrices only reach zero up to
/// rounding.
pub const ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot remove {k} comparisons: at most {max} keep the matrix irreducible")]
    BadK { k: usize, max: usize },
    #[error("base matrix {base}, disturbance {d}, {k} removed: {source}")]
    Cell {
        base: usize,
        d: usize,
        k: usize,
        #[source]
        source: IndexError,
    },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Distribution of the disturbance coefficient on `[1/d, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum GammaDist {
    #[default]
    Uniform,
    LogUniform,
}

/// How the `k`-removal samples of one disturbed matrix relate to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RemovalMode {
    /// `C_{k+1}` is `C_k` with one more comparison removed.
    #[default]
    Chain,
    /// Every `C_k` is drawn afresh from the complete matrix.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub base_matrices: usize,
    pub d_max: usize,
    pub removals_max: usize,
    pub blend: BlendParams,
    pub seed: u64,
    /// Hidden weights are log-uniform on `[1/weight_range, weight_range]`.
    pub weight_range: f64,
    pub gamma: GammaDist,
    pub removal: RemovalMode,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n: 7,
            base_matrices: 1000,
            d_max: 30,
            removals_max: 15,
            blend: BlendParams::default(),
            seed: 1,
            weight_range: 3.0,
            gamma: GammaDist::Uniform,
            removal: RemovalMode::Chain,
            threads: None,
        }
    }
}

/// Most comparisons that can be removed from a complete `n x n` matrix while
/// keeping it irreducible.
pub fn max_removals(n: usize) -> usize {
    n * (n - 1) / 2 - (n - 1)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::InvalidConfig(m));
        if self.n < crate::matrix::MIN_SIZE {
            return bad(format!("n = {} is below 3", self.n));
        }
        if self.removals_max > max_removals(self.n) {
            return bad(format!(
                "removals = {} exceeds {} for n = {}",
                self.removals_max,
                max_removals(self.n),
                self.n
            ));
        }
        if self.d_max < 1 {
            return bad("d_max must be at least 1".into());
        }
        if self.base_matrices < 1 {
            return bad("at least one base matrix is required".into());
        }
        if !(self.weight_range >= 1.0 && self.weight_range.is_finite()) {
            return bad(format!("weight range {} must be a finite value >= 1", self.weight_range));
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        self.blend.validate().map_err(|e| ExperimentError::InvalidConfig(e.to_string()))
    }
}

/// Random stream for one base matrix.
pub fn substream(seed: u64, ordinal: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(ordinal);
    rng
}

/// Consistent complete matrix from log-uniform hidden weights.
pub fn gen_consistent<R: Rng + ?Sized>(n: usize, weight_range: f64, rng: &mut R) -> PcMatrix {
    let bound = weight_range.ln();
    let w: Vec<f64> = (0..n)
        .map(|_| if bound > 0.0 { rng.gen_range(-bound..=bound).exp() } else { 1.0 })
        .collect();
    PcMatrix::from_weights(&w).expect("n >= 3 and positive weights")
}

/// Multiplies every upper-triangle entry by an independent `gamma` in
/// `[1/d, d]` and resets the lower triangle to reciprocals. No clipping.
pub fn disturb<R: Rng + ?Sized>(m: &PcMatrix, d: f64, dist: GammaDist, rng: &mut R) -> PcMatrix {
    if d <= 1.0 {
        return m.clone();
    }
    let n = m.size();
    let mut out = m.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let Some(c) = m.get(i, j) else { continue };
            let gamma = match dist {
                GammaDist::Uniform => rng.gen_range(1.0 / d..=d),
                GammaDist::LogUniform => rng.gen_range(-d.ln()..=d.ln()).exp(),
            };
            out = out.with_pair(i, j, c * gamma).expect("positive product");
        }
    }
    out
}

/// Removes one comparison chosen uniformly among those whose removal keeps
/// the matrix irreducible. `None` when the graph is already a tree.
pub fn remove_one<R: Rng + ?Sized>(m: &PcMatrix, rng: &mut R) -> Option<PcMatrix> {
    let g = ComparisonGraph::new(m);
    let removable: Vec<_> = g.edges().into_iter().filter(|&e| g.is_connected_without(Some(e))).collect();
    if removable.is_empty() {
        return None;
    }
    let (i, j) = removable[rng.gen_range(0..removable.len())];
    Some(m.without_pair(i, j))
}

/// Removes `k` comparisons one at a time, each uniformly among the removals
/// that preserve irreducibility.
pub fn remove_comparisons<R: Rng + ?Sized>(m: &PcMatrix, k: usize, rng: &mut R) -> Result<PcMatrix, ExperimentError> {
    let n = m.size();
    let edges = m.defined_pairs().len();
    let max = edges.saturating_sub(n - 1);
    if k > max || !ComparisonGraph::new(m).is_irreducible() {
        return Err(ExperimentError::BadK { k, max });
    }
    let mut cur = m.clone();
    for _ in 0..k {
        cur = remove_one(&cur, rng).expect("connected graph with a cycle has a removable edge");
    }
    Ok(cur)
}

/// `(a - b) / max(a, b)`, or 0 when both are (numerically) zero.
pub fn rescaled_distance(a: f64, b: f64) -> f64 {
    let snap = |x: f64| if x.abs() <= ZERO_TOL { 0.0 } else { x };
    let (a, b) = (snap(a), snap(b));
    let hi = a.max(b);
    if hi > 0.0 {
        (a - b) / hi
    } else {
        0.0
    }
}

/// Rescaled distance of one index between a matrix and its thinned sample.
pub fn rescaled_distance_for(id: IndexId, full: &PcMatrix, sample: &PcMatrix, p: &BlendParams) -> Result<f64, IndexError> {
    Ok(rescaled_distance(evaluate(full, id, p)?, evaluate(sample, id, p)?))
}

/// Mean rescaled distances `D(I, k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceTable {
    removals_max: usize,
    /// `means[index ordinal][k]`.
    means: Vec<Vec<f64>>,
    matrices: usize,
}

impl DistanceTable {
    pub fn removals_max(&self) -> usize {
        self.removals_max
    }

    /// Number of disturbed complete matrices averaged over.
    pub fn matrices(&self) -> usize {
        self.matrices
    }

    pub fn get(&self, id: IndexId, k: usize) -> f64 {
        self.means[id.ordinal()][k]
    }

    pub fn row(&self, id: IndexId) -> &[f64] {
        &self.means[id.ordinal()]
    }

    pub fn total(&self, id: IndexId) -> f64 {
        total_distance(self.row(id))
    }

    /// Indices sorted by total distance, most robust first.
    pub fn ranking(&self) -> Vec<(IndexId, f64)> {
        let mut r: Vec<_> = IndexId::ALL.iter().map(|&id| (id, self.total(id))).collect();
        r.sort_by(|a, b| a.1.total_cmp(&b.1));
        r
    }

    /// `index,k,D` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,k,D\n");
        for id in IndexId::ALL {
            for (k, v) in self.row(id).iter().enumerate() {
                writeln!(out, "{},{},{}", id.name(), k, format_sig(*v, 6)).expect("string write");
            }
        }
        out
    }

    /// `index,total` rows.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("index,total\n");
        for id in IndexId::ALL {
            writeln!(out, "{},{}", id.name(), format_sig(self.total(id), 6)).expect("string write");
        }
        out
    }
}

/// `sum_k |D(I, k)|`.
pub fn total_distance(row: &[f64]) -> f64 {
    row.iter().map(|v| v.abs()).sum()
}

/// `%g`-style formatting with `digits` significant digits, fixed notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

type Sums = Vec<[f64; 14]>;

fn values(m: &PcMatrix, p: &BlendParams) -> Result<IndexValues, IndexError> {
    Evaluator::new(m)?.all(p)
}

fn accumulate(sums: &mut [f64; 14], full: &IndexValues, sample: &IndexValues) {
    for (slot, (a, b)) in sums.iter_mut().zip(full.as_array().iter().zip(sample.as_array())) {
        *slot += rescaled_distance(*a, *b);
    }
}

fn run_base(cfg: &ExperimentConfig, ordinal: usize) -> Result<Sums, ExperimentError> {
    let mut rng = substream(cfg.seed, ordinal as u64);
    let base = gen_consistent(cfg.n, cfg.weight_range, &mut rng);
    let mut sums = vec![[0.0; 14]; cfg.removals_max + 1];
    for d in 1..=cfg.d_max {
        let cell = |k: usize| move |source| ExperimentError::Cell { base: ordinal, d, k, source };
        let full = disturb(&base, d as f64, cfg.gamma, &mut rng);
        let full_values = values(&full, &cfg.blend).map_err(cell(0))?;
        // k = 0 compares a matrix with itself: distance 0 by construction.
        let mut current = full.clone();
        for (k, slot) in sums.iter_mut().enumerate().skip(1) {
            let sample = match cfg.removal {
                RemovalMode::Chain => remove_one(&current, &mut rng).expect("k within the spanning-tree bound"),
                RemovalMode::Independent => remove_comparisons(&full, k, &mut rng)?,
            };
            let sample_values = values(&sample, &cfg.blend).map_err(cell(k))?;
            accumulate(slot, &full_values, &sample_values);
            current = sample;
        }
    }
    Ok(sums)
}

/// Runs the experiment described by `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<DistanceTable, ExperimentError> {
    cfg.validate()?;
    let work = || -> Result<Vec<Sums>, ExperimentError> {
        (0..cfg.base_matrices).into_par_iter().map(|b| run_base(cfg, b)).collect()
    };
    let partials = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ExperimentError::ThreadPool(e.to_string()))?
            .install(work)?,
        None => work()?,
    };

    let mut totals = vec![[0.0; 14]; cfg.removals_max + 1];
    for part in &partials {
        for (acc, row) in totals.iter_mut().zip(part) {
            for (a, v) in acc.iter_mut().zip(row) {
                *a += v;
            }
        }
    }
    let matrices = cfg.base_matrices * cfg.d_max;
    let means = (0..14)
        .map(|idx| totals.iter().map(|row| row[idx] / matrices as f64).collect())
        .collect();
    Ok(DistanceTable { removals_max: cfg.removals_max, means, matrices })
}
