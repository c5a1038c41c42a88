//! Generators and naive reference enumerators shared by the integration tests.
#![allow(dead_code)]

use pcinc::montecarlo::{disturb, gen_consistent, remove_comparisons, substream, GammaDist};
use pcinc::{ComparisonGraph, PcMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    substream(seed, 0)
}

pub fn consistent(n: usize, rng: &mut ChaCha8Rng) -> PcMatrix {
    gen_consistent(n, 3.0, rng)
}

/// Complete matrix disturbed at a random level in `[1, d_max]`.
pub fn disturbed(n: usize, d_max: f64, rng: &mut ChaCha8Rng) -> PcMatrix {
    let base = consistent(n, rng);
    let d = rng.gen_range(1.0..=d_max);
    disturb(&base, d, GammaDist::Uniform, rng)
}

/// Irreducible matrix with a random number of comparisons removed.
pub fn thinned(m: &PcMatrix, rng: &mut ChaCha8Rng) -> PcMatrix {
    let n = m.size();
    let max = m.defined_pairs().len() - (n - 1);
    let k = rng.gen_range(0..=max);
    remove_comparisons(m, k, rng).expect("k within bound")
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
}

/// Every simple cycle of length >= 3 in canonical form (smallest vertex
/// first, second vertex below the last), found by trying all vertex orders.
pub fn brute_cycles(g: &ComparisonGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for set in subsets(n).filter(|s| s.len() >= 3) {
        let (first, rest) = set.split_first().unwrap();
        for order in permutations(rest) {
            if order[0] > *order.last().unwrap() {
                continue;
            }
            let mut cyc = vec![*first];
            cyc.extend(order);
            let closed = cyc.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(*cyc.last().unwrap(), cyc[0]);
            if closed {
                out.push(cyc);
            }
        }
    }
    out.sort();
    out
}

/// Every simple path from `i` to `j`, found by trying all ordered subsets
/// of intermediate vertices.
pub fn brute_paths(g: &ComparisonGraph, i: usize, j: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != i && v != j).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mid: Vec<usize> = others.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &v)| v).collect();
        for order in permutations(&mid) {
            let mut p = vec![i];
            p.extend(order);
            p.push(j);
            if p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}
