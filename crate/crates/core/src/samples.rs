//! Small reference matrices used in docs, tests and the CLI smoke checks.

use crate::matrix::{parse_matrix, PcMatrix};

/// Complete 3x3 matrix with a single inconsistent triad (ratio 1/2).
pub const SMALL_3: &str = "3\n1 2 12\n1/2 1 3\n1/12 1/3 1\n";

/// Incomplete 4x4 matrix missing `c34`; it has a consistent completion.
pub const INCOMPLETE_4: &str = "\
4
1   2/3 4/3 1/2
3/2 1   2   3/4
3/4 1/2 1   ?
2   4/3 ?   1
";

/// Irreducible 7x7 matrix with 11 comparisons and no triads.
pub const TRIAD_FREE_7: &str = "\
7
1   1/2 ?   ?   ?   ?   1/7
2   1   ?   6   4   2   ?
?   ?   1   4   3   3/2 ?
?   1/6 1/4 1   ?   ?   1/2
?   1/4 1/3 ?   1   ?   1/4
?   1/2 2/3 ?   ?   1   1/3
7   ?   ?   2   4   3   1
";

pub fn small_3() -> PcMatrix {
    parse_matrix(SMALL_3).expect("valid sample")
}

pub fn incomplete_4() -> PcMatrix {
    parse_matrix(INCOMPLETE_4).expect("valid sample")
}

pub fn triad_free_7() -> PcMatrix {
    parse_matrix(TRIAD_FREE_7).expect("valid sample")
}

/// Complete `n x n` matrix of ones.
pub fn complete_ones(n: usize) -> PcMatrix {
    PcMatrix::from_weights(&vec![1.0; n]).expect("n >= 3")
}

/// Matrix whose only comparisons form the path `1 - 2 - ... - n`, with
/// labels taken from `w`.
pub fn chain(w: &[f64]) -> PcMatrix {
    let n = w.len();
    let upper: Vec<_> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (j == i + 1).then(|| w[i] / w[j]))
        .collect();
    PcMatrix::from_upper(n, &upper).expect("n >= 3")
}
