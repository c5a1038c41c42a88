//! Priority vectors and inconsistency indices for complete and incomplete
//! pairwise-comparison matrices, plus a Monte Carlo harness measuring how
//! each index reacts to deleted comparisons.

pub mod cli;
pub mod graph;
pub mod indices;
pub mod matrix;
pub mod montecarlo;
pub mod priority;
pub mod samples;

pub use graph::{ComparisonGraph, Cycle, EnumerationCap, GraphError, Path};
pub use indices::{evaluate, evaluate_all, BlendParams, ClassicalIndex, IndexError, IndexId, IndexValues};
pub use matrix::{parse_matrix, serialize_matrix, MatrixError, PcMatrix};
pub use montecarlo::{run_experiment, DistanceTable, ExperimentConfig, ExperimentError};
pub use priority::{Method, PriorityError, PriorityVector};
