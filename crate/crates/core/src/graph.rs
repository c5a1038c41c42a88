//! Graph view of a comparison matrix.
//!
//! Every defined comparison `{i, j}` is an undirected edge; following it from
//! `i` to `j` multiplies by the label `c_ij`. Because the matrix is
//! reciprocal, connectivity of this undirected graph is the same as strong
//! connectivity of the directed graph with both orientations.
//!
//! Cycles are enumerated once per direction-equivalence class, in canonical
//! form: the smallest vertex first and the second vertex smaller than the
//! last. Enumeration is a plain backtracking search rooted at each vertex
//! over the larger-indexed vertices, visiting neighbours in increasing order,
//! so results come out in lexicographic order of the canonical sequences.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::matrix::PcMatrix;

/// Size up to which cycle and path enumeration is unbounded by default.
pub const UNBOUNDED_MAX_N: usize = 8;

/// Default enumeration cap for graphs larger than [`UNBOUNDED_MAX_N`].
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("enumeration exceeded the cap of {0} items")]
    CapExceeded(usize),
    #[error("no path between alternatives {} and {}", .0 + 1, .1 + 1)]
    NoPath(usize, usize),
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
}

/// Limit on how many cycles/paths an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationCap {
    /// Unbounded for `n <= 8`, [`DEFAULT_CAP`] above that.
    #[default]
    Auto,
    Unbounded,
    AtMost(usize),
}

impl EnumerationCap {
    pub(crate) fn resolve(self, n: usize) -> Option<usize> {
        match self {
            Self::Auto if n <= UNBOUNDED_MAX_N => None,
            Self::Auto => Some(DEFAULT_CAP),
            Self::Unbounded => None,
            Self::AtMost(c) => Some(c),
        }
    }
}

/// Simple cycle in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(pub Vec<usize>);

impl Cycle {
    /// Canonical representative of the cycle through `vertices` (in order).
    pub fn canonical(vertices: &[usize]) -> Self {
        let m = vertices.len();
        let start = (0..m).min_by_key(|&p| vertices[p]).expect("empty cycle");
        let fwd: Vec<usize> = (0..m).map(|t| vertices[(start + t) % m]).collect();
        if m > 2 && fwd[1] > fwd[m - 1] {
            let mut rev = vec![fwd[0]];
            rev.extend(fwd[1..].iter().rev());
            Self(rev)
        } else {
            Self(fwd)
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Simple path; consecutive vertices are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    labels: Vec<f64>,
}

impl ComparisonGraph {
    pub fn new(m: &PcMatrix) -> Self {
        let n = m.size();
        let mut adjacency = vec![Vec::new(); n];
        let mut labels = vec![f64::NAN; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let Some(v) = m.get(i, j) {
                    adjacency[i].push(j);
                    labels[i * n + j] = v;
                }
            }
        }
        Self { n, adjacency, labels }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && !self.labels[i * self.n + j].is_nan()
    }

    /// `c_ij` for an edge.
    #[inline]
    pub fn label(&self, i: usize, j: usize) -> f64 {
        let v = self.labels[i * self.n + j];
        debug_assert!(!v.is_nan(), "({i}, {j}) is not an edge");
        v
    }

    /// Undirected edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.adjacency[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Diagonal of the degree matrix.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Full `n x n` degree matrix (row-major), zero off the diagonal.
    pub fn degree_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if i == j { self.degree(i) } else { 0 }).collect())
            .collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.is_connected_without(None)
    }

    /// Connectivity after (optionally) ignoring one undirected edge.
    pub fn is_connected_without(&self, skip: Option<(usize, usize)>) -> bool {
        if self.n == 0 {
            return true;
        }
        let skipped = |a: usize, b: usize| matches!(skip, Some((x, y)) if (a, b) == (x, y) || (a, b) == (y, x));
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if !seen[u] && !skipped(v, u) {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Cycle ratio `R_s = c_{i1 i2} ... c_{i(m-1) im} / c_{i1 im}`.
    pub fn cycle_ratio(&self, vertices: &[usize]) -> f64 {
        let m = vertices.len();
        let chain: f64 = vertices.windows(2).map(|w| self.label(w[0], w[1])).product();
        chain / self.label(vertices[0], vertices[m - 1])
    }

    /// `K_s = min(|1 - R_s|, |1 - 1/R_s|)`.
    pub fn cycle_inconsistency(&self, vertices: &[usize]) -> f64 {
        koczkodaj_ratio(self.cycle_ratio(vertices))
    }

    /// Calls `visit` with each canonical cycle of length `>= min_len` and its
    /// ratio `R_s`, in lexicographic order. Stops early on `Break`.
    pub fn visit_cycles<B>(
        &self,
        min_len: usize,
        mut visit: impl FnMut(&[usize], f64) -> ControlFlow<B>,
    ) -> Option<B> {
        let min_len = min_len.max(3);
        let mut on_path = vec![false; self.n];
        let mut path = Vec::with_capacity(self.n);
        for start in 0..self.n {
            on_path[start] = true;
            path.push(start);
            let r = self.cycle_dfs(start, 1.0, min_len, &mut path, &mut on_path, &mut visit);
            path.pop();
            on_path[start] = false;
            if let ControlFlow::Break(b) = r {
                return Some(b);
            }
        }
        None
    }

    fn cycle_dfs<B>(
        &self,
        start: usize,
        product: f64,
        min_len: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut impl FnMut(&[usize], f64) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let v = *path.last().expect("path starts at the root");
        // A closing edge back to `start` is checked before extending, which
        // keeps the emission order lexicographic.
        if path.len() >= min_len && path[1] < v && self.has_edge(v, start) {
            visit(path, product / self.label(start, v))?;
        }
        for &u in &self.adjacency[v] {
            if u <= start || on_path[u] {
                continue;
            }
            on_path[u] = true;
            path.push(u);
            let r = self.cycle_dfs(start, product * self.label(v, u), min_len, path, on_path, visit);
            path.pop();
            on_path[u] = false;
            r?;
        }
        ControlFlow::Continue(())
    }

    /// All canonical simple cycles of length `>= min_len`.
    pub fn enumerate_cycles(&self, min_len: usize, cap: EnumerationCap) -> Result<Vec<Cycle>, GraphError> {
        let limit = cap.resolve(self.n);
        let mut out = Vec::new();
        let broke = self.visit_cycles(min_len, |c, _| {
            if limit.is_some_and(|l| out.len() >= l) {
                return ControlFlow::Break(());
            }
            out.push(Cycle(c.to_vec()));
            ControlFlow::Continue(())
        });
        match (broke, limit) {
            (Some(()), Some(l)) => Err(GraphError::CapExceeded(l)),
            _ => Ok(out),
        }
    }

    /// Calls `visit` with every simple path starting at `from` (at least one
    /// edge long) and its label product, depth-first with neighbours in
    /// increasing order.
    pub fn visit_paths_from<B>(
        &self,
        from: usize,
        mut visit: impl FnMut(&[usize], f64) -> ControlFlow<B>,
    ) -> Option<B> {
        let mut on_path = vec![false; self.n];
        let mut path = vec![from];
        on_path[from] = true;
        match self.path_dfs(1.0, &mut path, &mut on_path, &mut visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn path_dfs<B>(
        &self,
        product: f64,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut impl FnMut(&[usize], f64) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let v = *path.last().expect("non-empty path");
        for &u in &self.adjacency[v] {
            if on_path[u] {
                continue;
            }
            let p = product * self.label(v, u);
            on_path[u] = true;
            path.push(u);
            let r = match visit(path, p) {
                ControlFlow::Continue(()) => self.path_dfs(p, path, on_path, visit),
                brk => brk,
            };
            path.pop();
            on_path[u] = false;
            r?;
        }
        ControlFlow::Continue(())
    }

    /// All simple paths from `i` to `j`.
    pub fn enumerate_paths(&self, i: usize, j: usize, cap: EnumerationCap) -> Result<Vec<Path>, GraphError> {
        if i >= self.n || j >= self.n || i == j {
            return Err(GraphError::BadVertex(if i >= self.n || i == j { i } else { j }));
        }
        let limit = cap.resolve(self.n);
        let mut out = Vec::new();
        let mut on_path = vec![false; self.n];
        let mut path = vec![i];
        on_path[i] = true;
        let broke = self.paths_to(j, &mut path, &mut on_path, &mut |p: &[usize]| {
            if limit.is_some_and(|l| out.len() >= l) {
                return ControlFlow::Break(());
            }
            out.push(Path(p.to_vec()));
            ControlFlow::Continue(())
        });
        if broke.is_break() {
            return Err(GraphError::CapExceeded(limit.unwrap_or(usize::MAX)));
        }
        if out.is_empty() {
            return Err(GraphError::NoPath(i, j));
        }
        Ok(out)
    }

    // Paths stop at the target instead of passing through it.
    fn paths_to(
        &self,
        target: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let v = *path.last().expect("non-empty path");
        for &u in &self.adjacency[v] {
            if on_path[u] {
                continue;
            }
            path.push(u);
            let r = if u == target {
                visit(path)
            } else {
                on_path[u] = true;
                let r = self.paths_to(target, path, on_path, visit);
                on_path[u] = false;
                r
            };
            path.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    /// Product of labels along a path.
    pub fn path_product(&self, vertices: &[usize]) -> f64 {
        vertices.windows(2).map(|w| self.label(w[0], w[1])).product()
    }
}

/// `min(|1 - r|, |1 - 1/r|)`, symmetric under `r -> 1/r`.
pub fn koczkodaj_ratio(r: f64) -> f64 {
    (1.0 - r).abs().min((1.0 - 1.0 / r).abs())
}
