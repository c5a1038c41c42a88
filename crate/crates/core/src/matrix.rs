//! Pairwise-comparison matrices with optional missing judgments.
//!
//! A [`PcMatrix`] is always square (`n >= 3`), has a unit diagonal, and is
//! reciprocal: `c[j][i] == 1 / c[i][j]` for every defined off-diagonal cell,
//! and a missing cell is mirrored by a missing cell. The lower triangle is
//! never stored independently of the upper one; it is recomputed as the exact
//! reciprocal on construction.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Smallest supported number of alternatives.
pub const MIN_SIZE: usize = 3;

/// Default upper bound `s` of the judgment scale `[1/s, s]`.
pub const DEFAULT_SCALE: f64 = 9.0;

/// Relative tolerance accepted between `c[j][i]` and `1 / c[i][j]`.
pub const RECIPROCITY_TOL: f64 = 1e-12;

/// Errors produced while building or parsing a matrix.
///
/// Cell coordinates are zero-based; `Display` renders them one-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NonSquare { n: usize, row: usize, len: usize },
    #[error("matrix size {0} is below the minimum of {MIN_SIZE}")]
    BadSize(usize),
    #[error("diagonal entry c[{}][{}] must be exactly 1", .0 + 1, .0 + 1)]
    BadDiagonal(usize),
    #[error("entries c[{}][{}] and c[{}][{}] are not reciprocal", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    ReciprocityViolation(usize, usize),
    #[error("entry c[{}][{}] is not a positive finite number", .0 + 1, .1 + 1)]
    NonPositiveEntry(usize, usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// Three mutually defined comparisons `(c_ik, c_kj, c_ij)` over distinct
/// alternatives `i < k < j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub values: (f64, f64, f64),
}

impl Triad {
    /// Koczkodaj's local inconsistency `min(|1 - c_ik c_kj / c_ij|, |1 - c_ij / (c_ik c_kj)|)`.
    pub fn koczkodaj(&self) -> f64 {
        let (ik, kj, ij) = self.values;
        let r = ik * kj / ij;
        (1.0 - r).abs().min((1.0 - 1.0 / r).abs())
    }
}

/// A validated, immutable pairwise-comparison matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    entries: Vec<Option<f64>>,
    scale: f64,
}

impl PcMatrix {
    /// Checks a candidate grid (rows of cells, `None` = missing).
    ///
    /// The input is left untouched; the stored lower triangle is the exact
    /// reciprocal of the upper one.
    pub fn validate(grid: &[Vec<Option<f64>>]) -> Result<Self, MatrixError> {
        let n = grid.len();
        for (row, cells) in grid.iter().enumerate() {
            if cells.len() != n {
                return Err(MatrixError::NonSquare { n, row, len: cells.len() });
            }
        }
        if n < MIN_SIZE {
            return Err(MatrixError::BadSize(n));
        }
        let mut entries = vec![None; n * n];
        for i in 0..n {
            if grid[i][i] != Some(1.0) {
                return Err(MatrixError::BadDiagonal(i));
            }
            entries[i * n + i] = Some(1.0);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                match (grid[i][j], grid[j][i]) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        if !(a.is_finite() && a > 0.0) {
                            return Err(MatrixError::NonPositiveEntry(i, j));
                        }
                        if !(b.is_finite() && b > 0.0) {
                            return Err(MatrixError::NonPositiveEntry(j, i));
                        }
                        let inv = 1.0 / a;
                        if (b - inv).abs() > RECIPROCITY_TOL * inv {
                            return Err(MatrixError::ReciprocityViolation(i, j));
                        }
                        entries[i * n + j] = Some(a);
                        entries[j * n + i] = Some(inv);
                    }
                    _ => return Err(MatrixError::ReciprocityViolation(i, j)),
                }
            }
        }
        Ok(Self { n, entries, scale: DEFAULT_SCALE })
    }

    /// Builds a matrix from the strict upper triangle, given row by row
    /// (`n(n-1)/2` cells: `c12, c13, ..., c1n, c23, ...`).
    pub fn from_upper(n: usize, upper: &[Option<f64>]) -> Result<Self, MatrixError> {
        if n < MIN_SIZE {
            return Err(MatrixError::BadSize(n));
        }
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(MatrixError::NonSquare { n, row: 0, len: upper.len() });
        }
        let mut grid = vec![vec![None; n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            grid[i][i] = Some(1.0);
            for j in (i + 1)..n {
                let v = *it.next().expect("length checked above");
                grid[i][j] = v;
                grid[j][i] = v.map(|x| 1.0 / x);
            }
        }
        Self::validate(&grid)
    }

    /// The fully consistent matrix `c_ij = w_i / w_j`.
    pub fn from_weights(w: &[f64]) -> Result<Self, MatrixError> {
        let n = w.len();
        let upper: Vec<_> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| Some(w[i] / w[j]))
            .collect();
        Self::from_upper(n, &upper)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `c_ij`, or `None` if the comparison is missing.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.n + j]
    }

    pub fn is_defined(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Replaces the informational scale bound `s`.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// True when some defined entry lies outside `[1/s, s]`. The bound is
    /// never enforced.
    pub fn exceeds_scale(&self) -> bool {
        let (lo, hi) = (1.0 / self.scale, self.scale);
        self.entries.iter().flatten().any(|&v| v < lo || v > hi)
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// Unordered pairs `(i, j)`, `i < j`, with a defined comparison.
    pub fn defined_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_defined(i, j))
            .collect()
    }

    /// Number of missing cells in row `i`.
    pub fn missing_in_row(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| !self.is_defined(i, j)).count()
    }

    /// One triad per unordered `{i, k, j}` whose three comparisons are all defined.
    pub fn triads(&self) -> Vec<Triad> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for k in (i + 1)..n {
                let Some(ik) = self.get(i, k) else { continue };
                for j in (k + 1)..n {
                    if let (Some(kj), Some(ij)) = (self.get(k, j), self.get(i, j)) {
                        out.push(Triad { i, k, j, values: (ik, kj, ij) });
                    }
                }
            }
        }
        out
    }

    /// Copy with the comparison `{i, j}` (both orientations) removed.
    pub fn without_pair(&self, i: usize, j: usize) -> Self {
        assert!(i != j, "cannot remove a diagonal entry");
        let mut m = self.clone();
        m.entries[i * self.n + j] = None;
        m.entries[j * self.n + i] = None;
        m
    }

    /// Copy with `c_ij` replaced (and `c_ji` set to its reciprocal).
    pub fn with_pair(&self, i: usize, j: usize, value: f64) -> Result<Self, MatrixError> {
        if i == j {
            return Err(MatrixError::BadDiagonal(i));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(MatrixError::NonPositiveEntry(i, j));
        }
        let mut m = self.clone();
        m.entries[i * self.n + j] = Some(value);
        m.entries[j * self.n + i] = Some(1.0 / value);
        Ok(m)
    }

    /// Relabels alternatives: row/column `i` of the result is row/column
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut entries = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Self { n, entries, scale: self.scale }
    }

    /// Rows of cells, `None` for missing.
    pub fn to_grid(&self) -> Vec<Vec<Option<f64>>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }
}

fn parse_token(tok: &str, line: usize) -> Result<Option<f64>, MatrixError> {
    let syntax = |msg: String| MatrixError::Syntax { line, msg };
    if tok == "?" {
        return Ok(None);
    }
    if let Some((a, b)) = tok.split_once('/') {
        let num: u64 = a.parse().map_err(|_| syntax(format!("bad numerator in '{tok}'")))?;
        let den: u64 = b.parse().map_err(|_| syntax(format!("bad denominator in '{tok}'")))?;
        if num == 0 || den == 0 {
            return Err(syntax(format!("fraction '{tok}' must have positive parts")));
        }
        return Ok(Some(num as f64 / den as f64));
    }
    let v: f64 = tok.parse().map_err(|_| syntax(format!("cannot parse '{tok}'")))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(syntax(format!("'{tok}' is not a positive number")));
    }
    Ok(Some(v))
}

/// Parses the plain-text matrix format.
///
/// ```text
/// # optional comments
/// 3
/// 1    2   12
/// 1/2  1   3
/// 1/12 1/3 1
/// ```
///
/// Tokens are positive decimals, fractions `a/b` of positive integers, or `?`.
pub fn parse_matrix(text: &str) -> Result<PcMatrix, MatrixError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (size_line, size_text) = lines
        .next()
        .ok_or(MatrixError::Syntax { line: 1, msg: "missing matrix size".into() })?;
    let n: usize = size_text.parse().map_err(|_| MatrixError::Syntax {
        line: size_line,
        msg: format!("expected matrix size, found '{size_text}'"),
    })?;
    if n < MIN_SIZE {
        return Err(MatrixError::BadSize(n));
    }

    let mut grid = Vec::with_capacity(n);
    for row in 0..n {
        let (line, text) = lines.next().ok_or(MatrixError::Syntax {
            line: size_line,
            msg: format!("expected {n} rows, found {row}"),
        })?;
        let cells = text
            .split_whitespace()
            .map(|t| parse_token(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if cells.len() != n {
            return Err(MatrixError::Syntax {
                line,
                msg: format!("expected {n} entries, found {}", cells.len()),
            });
        }
        grid.push(cells);
    }
    if let Some((line, _)) = lines.next() {
        return Err(MatrixError::Syntax { line, msg: "unexpected trailing content".into() });
    }
    PcMatrix::validate(&grid)
}

/// Writes the text format. Values use the shortest representation that
/// parses back to the same `f64`.
pub fn serialize_matrix(m: &PcMatrix) -> String {
    let n = m.size();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| match m.get(i, j) {
                Some(v) => format!("{v}"),
                None => "?".to_string(),
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

impl FromStr for PcMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_matrix(s)
    }
}

impl fmt::Display for PcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_matrix(self))
    }
}
