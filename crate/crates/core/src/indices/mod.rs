//! Inconsistency indices.
//!
//! [`IndexId`] names the fourteen indices that accept incomplete matrices;
//! [`ClassicalIndex`] names the ten complete-matrix reference indices they
//! reduce to. Matrix-based indices ([`cycles`]) work from cycle and path
//! products, ranking-based ones ([`ranking`]) from residuals against the ILLS
//! priority vector.

pub mod classical;
pub mod cycles;
pub mod ranking;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ComparisonGraph, EnumerationCap, GraphError};
use crate::matrix::PcMatrix;
use crate::priority::{self, PriorityError};

pub use classical::{classical_indices, ClassicalValues};
pub use cycles::{blend_indices, cycle_based_indices, sh_index_inc, Blends, CycleIndices};
pub use ranking::{gci_inc, gw_inc, harker_ci, lls_index, oliva_index, re_inc, Variant};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("index requires a complete matrix")]
    NotComplete,
    #[error("invalid blend parameters: {0}")]
    BadParams(String),
    #[error("cycle enumeration exceeded the cap of {0}")]
    CycleCapExceeded(usize),
    #[error("zero denominator with nonzero residual")]
    DegenerateDenominator,
    #[error(transparent)]
    Priority(PriorityError),
    #[error("unknown index name '{0}'")]
    UnknownIndex(String),
}

impl From<PriorityError> for IndexError {
    fn from(e: PriorityError) -> Self {
        match e {
            PriorityError::NotIrreducible => Self::NotIrreducible,
            PriorityError::NotComplete => Self::NotComplete,
            other => Self::Priority(other),
        }
    }
}

impl From<GraphError> for IndexError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::CapExceeded(c) => Self::CycleCapExceeded(c),
            _ => Self::NotIrreducible,
        }
    }
}

/// Incomplete-capable indices, in the column order of the robustness tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexId {
    Gci1,
    Gci2,
    KTilde,
    I1,
    I2,
    IAlpha,
    IAlphaBeta,
    GoldenWang,
    SaloHamalainen,
    Re1,
    Re2,
    Ci,
    Lls,
    Oliva,
}

impl IndexId {
    pub const ALL: [IndexId; 14] = [
        Self::Gci1,
        Self::Gci2,
        Self::KTilde,
        Self::I1,
        Self::I2,
        Self::IAlpha,
        Self::IAlphaBeta,
        Self::GoldenWang,
        Self::SaloHamalainen,
        Self::Re1,
        Self::Re2,
        Self::Ci,
        Self::Lls,
        Self::Oliva,
    ];

    /// Stable name used in CSV and JSON output.
    pub fn name(self) -> &'static str {
        match self {
            Self::KTilde => "Ktilde",
            Self::I1 => "I1",
            Self::I2 => "I2",
            Self::IAlpha => "Ialpha",
            Self::IAlphaBeta => "Ialphabeta",
            Self::SaloHamalainen => "SH",
            Self::Gci1 => "GCI1",
            Self::Gci2 => "GCI2",
            Self::GoldenWang => "GW",
            Self::Re1 => "RE1",
            Self::Re2 => "RE2",
            Self::Ci => "CI",
            Self::Lls => "LLS",
            Self::Oliva => "Oliva",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::KTilde => "Koczkodaj index over cycles",
            Self::I1 => "cycle based index v. I",
            Self::I2 => "cycle based index v. II",
            Self::IAlpha => "alpha-index",
            Self::IAlphaBeta => "alpha,beta-index",
            Self::SaloHamalainen => "Salo-Hamalainen index over paths",
            Self::Gci1 => "geometric consistency index v. I",
            Self::Gci2 => "geometric consistency index v. II",
            Self::GoldenWang => "Golden-Wang index",
            Self::Re1 => "relative error v. I",
            Self::Re2 => "relative error v. II",
            Self::Ci => "Harker consistency index",
            Self::Lls => "logarithmic least squares criterion",
            Self::Oliva => "Oliva-Setola-Scala index",
        }
    }

    /// Position in [`IndexId::ALL`].
    pub fn ordinal(self) -> usize {
        Self::ALL.iter().position(|&x| x == self).expect("listed")
    }

    /// True for indices computed directly from matrix entries.
    pub fn is_matrix_based(self) -> bool {
        matches!(self, Self::KTilde | Self::I1 | Self::I2 | Self::IAlpha | Self::IAlphaBeta | Self::SaloHamalainen)
    }
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexId {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| IndexError::UnknownIndex(s.to_string()))
    }
}

/// Complete-matrix reference indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassicalIndex {
    Ci,
    Gci,
    K,
    I1,
    I2,
    IAlpha,
    IAlphaBeta,
    GoldenWang,
    SaloHamalainen,
    Re,
}

impl ClassicalIndex {
    pub const ALL: [ClassicalIndex; 10] = [
        Self::Ci,
        Self::Gci,
        Self::K,
        Self::I1,
        Self::I2,
        Self::IAlpha,
        Self::IAlphaBeta,
        Self::GoldenWang,
        Self::SaloHamalainen,
        Self::Re,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ci => "CI",
            Self::Gci => "GCI",
            Self::K => "K",
            Self::I1 => "I1",
            Self::I2 => "I2",
            Self::IAlpha => "Ialpha",
            Self::IAlphaBeta => "Ialphabeta",
            Self::GoldenWang => "GW",
            Self::SaloHamalainen => "ISH",
            Self::Re => "RE",
        }
    }
}

/// Weights of the two blended indices:
/// `I_alpha = alpha K + (1 - alpha) I1` and
/// `I_alpha,beta = ab_alpha K + ab_beta I1 + (1 - ab_alpha - ab_beta) I2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlendParams {
    pub alpha: f64,
    pub ab_alpha: f64,
    pub ab_beta: f64,
}

impl Default for BlendParams {
    fn default() -> Self {
        Self { alpha: 0.5, ab_alpha: 0.3, ab_beta: 0.3 }
    }
}

impl BlendParams {
    pub fn new(alpha: f64, ab_alpha: f64, ab_beta: f64) -> Result<Self, IndexError> {
        let p = Self { alpha, ab_alpha, ab_beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), IndexError> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(self.alpha) {
            return Err(IndexError::BadParams(format!("alpha = {} is outside [0, 1]", self.alpha)));
        }
        if !unit(self.ab_alpha) || !(self.ab_beta >= 0.0) || !(self.ab_alpha + self.ab_beta <= 1.0) {
            return Err(IndexError::BadParams(format!(
                "alpha,beta = ({}, {}) must be nonnegative with sum at most 1",
                self.ab_alpha, self.ab_beta
            )));
        }
        Ok(())
    }
}

/// Values of all fourteen incomplete-capable indices on one matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexValues([f64; 14]);

impl IndexValues {
    pub fn get(&self, id: IndexId) -> f64 {
        self.0[id.ordinal()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndexId, f64)> + '_ {
        IndexId::ALL.into_iter().zip(self.0.iter().copied())
    }

    pub fn as_array(&self) -> &[f64; 14] {
        &self.0
    }
}

/// Intermediate results shared by several indices on the same matrix.
pub struct Evaluator<'a> {
    matrix: &'a PcMatrix,
    graph: ComparisonGraph,
    cap: EnumerationCap,
}

impl<'a> Evaluator<'a> {
    pub fn new(matrix: &'a PcMatrix) -> Result<Self, IndexError> {
        Self::with_cap(matrix, EnumerationCap::Auto)
    }

    pub fn with_cap(matrix: &'a PcMatrix, cap: EnumerationCap) -> Result<Self, IndexError> {
        let graph = ComparisonGraph::new(matrix);
        if !graph.is_irreducible() {
            return Err(IndexError::NotIrreducible);
        }
        Ok(Self { matrix, graph, cap })
    }

    /// All fourteen indices. Cycles and ILLS weights are computed once.
    pub fn all(&self, params: &BlendParams) -> Result<IndexValues, IndexError> {
        params.validate()?;
        let c = cycles::cycle_indices_on(&self.graph, self.cap)?;
        let blends = blend_indices(&c, params)?;
        let sh = cycles::sh_on(&self.graph, self.cap)?;
        let w = priority::ills(self.matrix)?;
        let r = ranking::Residuals::new(self.matrix, w.weights());
        let lambda = priority::harker_rank(self.matrix)?.value;

        let mut out = [0.0; 14];
        for id in IndexId::ALL {
            out[id.ordinal()] = match id {
                IndexId::KTilde => c.k,
                IndexId::I1 => c.i1,
                IndexId::I2 => c.i2,
                IndexId::IAlpha => blends.alpha,
                IndexId::IAlphaBeta => blends.alpha_beta,
                IndexId::SaloHamalainen => sh,
                IndexId::Gci1 => r.gci(Variant::V1),
                IndexId::Gci2 => r.gci(Variant::V2),
                IndexId::GoldenWang => ranking::gw_with(self.matrix, w.weights()),
                IndexId::Re1 => r.relative_error(Variant::V1)?,
                IndexId::Re2 => r.relative_error(Variant::V2)?,
                IndexId::Ci => ranking::ci_from_lambda(lambda, self.matrix.size()),
                IndexId::Lls => r.lls(),
                IndexId::Oliva => oliva_index(self.matrix)?,
            };
        }
        Ok(IndexValues(out))
    }
}

/// Evaluates a single index.
pub fn evaluate(m: &PcMatrix, id: IndexId, params: &BlendParams) -> Result<f64, IndexError> {
    params.validate()?;
    match id {
        IndexId::KTilde => Ok(cycle_based_indices(m)?.k),
        IndexId::I1 => Ok(cycle_based_indices(m)?.i1),
        IndexId::I2 => Ok(cycle_based_indices(m)?.i2),
        IndexId::IAlpha => Ok(blend_indices(&cycle_based_indices(m)?, params)?.alpha),
        IndexId::IAlphaBeta => Ok(blend_indices(&cycle_based_indices(m)?, params)?.alpha_beta),
        IndexId::SaloHamalainen => sh_index_inc(m),
        IndexId::Gci1 => gci_inc(m, Variant::V1),
        IndexId::Gci2 => gci_inc(m, Variant::V2),
        IndexId::GoldenWang => gw_inc(m),
        IndexId::Re1 => re_inc(m, Variant::V1),
        IndexId::Re2 => re_inc(m, Variant::V2),
        IndexId::Ci => harker_ci(m),
        IndexId::Lls => lls_index(m),
        IndexId::Oliva => oliva_index(m),
    }
}

/// Convenience wrapper around [`Evaluator::all`].
pub fn evaluate_all(m: &PcMatrix, params: &BlendParams) -> Result<IndexValues, IndexError> {
    Evaluator::new(m)?.all(params)
}
