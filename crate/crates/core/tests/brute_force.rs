mod common;

use pcinc::montecarlo::remove_comparisons;
use pcinc::samples::complete_ones;
use pcinc::{ComparisonGraph, EnumerationCap};

use common::{brute_cycles, brute_paths, consistent, rng};

fn check(g: &ComparisonGraph) {
    let mut cycles: Vec<Vec<usize>> =
        g.enumerate_cycles(3, EnumerationCap::Unbounded).unwrap().into_iter().map(|c| c.0).collect();
    cycles.sort();
    assert_eq!(cycles, brute_cycles(g));
    let n = g.vertex_count();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut paths: Vec<Vec<usize>> =
                g.enumerate_paths(i, j, EnumerationCap::Unbounded).unwrap().into_iter().map(|p| p.0).collect();
            paths.sort();
            assert_eq!(paths, brute_paths(g, i, j), "paths {i} -> {j}");
        }
    }
}

#[test]
fn complete_graphs_match_brute_force() {
    for n in 3..=6 {
        check(&ComparisonGraph::new(&complete_ones(n)));
    }
}

#[test]
fn closed_form_cycle_counts() {
    // sum over m of C(n, m) (m - 1)! / 2
    for (n, expected) in [(4, 7), (5, 37), (6, 197), (7, 1172)] {
        let g = ComparisonGraph::new(&complete_ones(n));
        assert_eq!(g.enumerate_cycles(3, EnumerationCap::Unbounded).unwrap().len(), expected);
    }
}

#[test]
fn random_irreducible_graphs_match_brute_force() {
    let mut r = rng(2024);
    for n in 4..=6 {
        let max = n * (n - 1) / 2 - (n - 1);
        for k in 0..=max {
            for _ in 0..3 {
                let m = remove_comparisons(&consistent(n, &mut r), k, &mut r).unwrap();
                check(&ComparisonGraph::new(&m));
            }
        }
    }
}

#[test]
fn canonical_cycles_are_unique_up_to_direction() {
    let g = ComparisonGraph::new(&complete_ones(6));
    let cycles = g.enumerate_cycles(3, EnumerationCap::Unbounded).unwrap();
    let mut keys: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| {
            let mut v = c.0.clone();
            v.sort();
            v
        })
        .collect();
    keys.sort();
    // Each canonical cycle is a distinct rotation/reflection class.
    for c in &cycles {
        let rev: Vec<usize> = std::iter::once(c.0[0]).chain(c.0[1..].iter().rev().copied()).collect();
        assert!(!cycles.iter().any(|d| d.0 == rev && rev != c.0));
    }
    assert_eq!(keys.len(), cycles.len());
}
